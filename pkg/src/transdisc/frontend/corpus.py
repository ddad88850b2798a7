"""Regression corpus of worked examples.

Each case names its source example in ``source``.  Expected values are
tagged: ``PAPER`` values are quoted results, ``DERIVED`` values were
computed by an independent route (closed-form discriminant, colength
oracle) and frozen.  Where the quoted value and the derived one differ the
case keeps the derived value and stores the quoted one in ``quoted``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..errors import TransdiscError
from .commands import RunOptions, run, val
from .jobspec import parse_job


@dataclass(frozen=True)
class RegressionCase:
    name: str
    source: str
    expected: dict
    job: str | None = None
    script: object = None
    tag: str = "PAPER"
    expect_error: str | None = None
    quoted: dict = field(default_factory=dict)


@dataclass
class CaseResult:
    name: str
    source: str
    ok: bool
    mismatches: list
    actual: dict


def _job(ring, z, x, command, options="", extra=""):
    return (f"RING\n{ring}\nZ\n{z}\nX\n{x}\n{extra}COMMAND\n{command}\n"
            + (f"OPTIONS\n{options}\n" if options else ""))


# scripted cases -----------------------------------------------------------

def _symbolic_powers():
    from ..groebner import Ideal
    from ..polycore import RingSpec, parse_polynomial

    R = RingSpec(("x", "y", "z"))

    def I(*g):
        return Ideal([parse_polynomial(s, R) for s in g], R)

    f = parse_polynomial("x*y*z", R)
    inter = I("x", "y").power(2).intersect(I("y", "z").power(2)).intersect(I("x", "z").power(2))
    return {"in_symbolic_square": inter.contains(f), "in_ordinary_square": I("x*y", "y*z", "x*z").power(2).contains(f)}


def _le_numbers(p=3, q=2):
    from ..groebner import Ideal, local_colength_at_origin
    from ..polycore import RingSpec, parse_polynomial

    R = RingSpec(("x", "y", "t"))

    def col(*g):
        return int(local_colength_at_origin(Ideal([parse_polynomial(s, R) for s in g], R)))

    return {
        "lambda1": col("t", f"x^{p - 1}", f"y^{p - 1}"),
        "lambda0": col(f"y^{p - 1}", f"x+t^{q}", f"t^{q - 1}*x^{p}"),
    }


def _weighted_grid():
    import itertools
    import warnings

    from ..weighted import WeightData, milnor_weighted_hypersurface, mu_plus_muhat, poincare_series_mu

    bad = 0
    count = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for k in (1, 2, 3):
            for ws in itertools.product(range(1, 5), repeat=k):
                for d in range(1, 13):
                    wd = WeightData(ws, (d,))
                    a = milnor_weighted_hypersurface(wd)
                    count += 1
                    if not (a == poincare_series_mu(wd) == mu_plus_muhat(wd)):
                        bad += 1
    return {"grid_size": count, "disagreements": bad}


def _a1(k, seed):
    from ..fixtures import a1_family_check

    return a1_family_check(k, seed)


def _truncation(x):
    from ..filtration import PairSetup
    from ..transversal import truncation_invariance_check

    s = PairSetup.from_strings(("x", "y", "z"), ["x", "y"], [x])
    c = truncation_invariance_check(s, seed=1)
    return {"precondition": c.precondition, "holds": c.holds}


# the corpus ---------------------------------------------------------------

W = "x y z"
CASES = [
    RegressionCase(
        "gb-lex-golden", "Ex.ci.whose.PT",
        {"basis": ["y^3*z + x^2*w^2", "z^3 + x*y*w", "-y^4*z + x*z^3*w", "y^5*z + z^6"]},
        job=_job("x y z w", "x, y", "w^2*x^2 + z*y^3, w*x*y + z^3", "gb", "order = lex"),
        tag="DERIVED", quoted={"basis": "fourth element printed as z^6 - y^5*z"},
    ),
    RegressionCase("symbolic-powers", "symbolic powers example",
                   {"in_symbolic_square": True, "in_ordinary_square": False}, script=_symbolic_powers),
    RegressionCase("whitney-umbrella", "reduced point discriminant",
                   {"support": ["z"], "multiplicities": {"z=0": 1}, "total_degree": 1},
                   job=_job(W, "x, y", "x^2*z - y^2", "db-report")),
    *[
        RegressionCase(f"whitney-q{q}", "Ex.Whitney.Umbrella",
                       {"multiplicities": {"z=0": q}, "equation": f"z^{q}" if q > 1 else "z"},
                       job=_job(W, "x, y", f"x^2*z^{q} - y^2 - x^3", "db-report"))
        for q in (1, 2, 3)
    ],
    *[
        RegressionCase(f"whitney-q{q}-splitting", "Ex.Whitney.Umbrella",
                       {"degrees": [q]},
                       job=_job("x y z t", "x, y", f"x^2*(z^{q} - t) - y^2 - x^3", "family-degrees",
                                "param = t\nsamples = 1"))
        for q in (1, 2, 3)
    ],
    *[
        RegressionCase(f"fast-dying-p{p}", "Ex.Fast.Dying",
                       {"determinant": f"z^{p - 1}" if p > 2 else "z", "order": p - 1},
                       job=_job(W, "x, y", f"x^{p}*z - y^{p} - x^{p + 1}", "db-equation", "point = z:0"))
        for p in (2, 3, 4)
    ],
    *[
        RegressionCase(f"tangent-cone-{p}{q}{r}", "Ex.Discrim.Depends",
                       {"multiplicities": {"z=0": 2 * (p - 1)}, "total_degree": 2 * (p - 1)},
                       job=_job(W, "x, y", f"z*(x^{p} + y^{p}) - x^{q} - y^{r}", "db-mult"))
        for p, q, r in ((2, 3, 4), (3, 4, 5), (2, 5, 3), (3, 7, 4))
    ],
    RegressionCase("tangent-cone-split", "Ex.Discrim.Depends",
                   {"multiplicities": {"z=0": 2, "z=1": 2}},
                   job=_job(W, "x, y", "z*x^3 + (z - 1)*y^3 - x^4 - y^5", "db-mult")),
    RegressionCase("le-comparison-degree", "Sec.Db.vs.Le.Numbers", {"total_degree": 4},
                   job=_job("x y t", "x, y", "y^3 - x^4/4 - t^2*x^3/3", "db-mult")),
    RegressionCase("le-comparison-numbers", "Sec.Db.vs.Le.Numbers", {"lambda1": 4, "lambda0": 14},
                   script=_le_numbers),
    RegressionCase("mixed-order-21", "multiplicity proposition example iii", {"multiplicities": {"z=0": 3}},
                   job=_job(W, "x, y", "x^4 + x^2*y^2*z^2 + y^4*z", "db-mult", "point = z:0")),
    RegressionCase("mixed-order-12", "multiplicity proposition example iii", {"multiplicities": {"z=0": 6}},
                   job=_job(W, "x, y", "x^4 + x^2*y^2*z + y^4*z^2", "db-mult", "point = z:0"),
                   tag="DERIVED", quoted={"multiplicities": "5 from q1(p-1)+(p-r)(q2-q1)"}),
    RegressionCase("mixed-order-13", "multiplicity proposition example iii", {"multiplicities": {"z=0": 7}},
                   job=_job(W, "x, y", "x^4 + x^2*y^2*z + y^4*z^3", "db-mult", "point = z:0")),
    RegressionCase("non-smooth-z", "Ex.Singular.Locus", {"empty": True},
                   job=_job(W, "x*y, z", "(x*y)^2 - z^2", "db-support")),
    RegressionCase("non-smooth-z-family", "Ex.Singular.Locus", {"degrees": [0, 0]},
                   job=_job("x y z t", "x*y + t, z", "(x*y + t)^2 - z^2", "family-degrees",
                            "param = t\nsamples = 1 2")),
    RegressionCase("pullback-whitney", "pullback property", {"holds": True, "pulled_back": "z^3"},
                   job=_job(W, "x, y", "x^2*z - y^2", "pullback-check", extra="PHI\nz = z^3\n")),
    RegressionCase("pullback-non-reduced", "Ex.Conditions.on.Pulback", {},
                   job=_job(W, "x, y", "x^2*z - y^2", "pullback-check", extra="PHI\nx = x^2\n"),
                   expect_error="reduced pullback"),
    RegressionCase("non-flat-family", "non-flat family example", {"degrees": [0, 1], "flat": False},
                   job=_job("x y z t", "x, y", "x^3 + y^3 + t*(x^2 + z*y^2)", "family-degrees",
                            "param = t\nsamples = 0 1")),
    RegressionCase("a1-k2", "Ex.A1", {"holds": True}, script=lambda: _a1(2, 7)),
    RegressionCase("a1-k3", "Ex.A1", {"holds": True}, script=lambda: _a1(3, 11)),
    RegressionCase("sci-zero-divisor", "Ex.Hypersurface.not.always.SCI", {"is_sci": False},
                   job=_job("x1 x2", "x1^2, x2^2", "x1^3 + x2^3", "sci-check")),
    RegressionCase("sci-not-regular", "Ex.Hypersurface.not.always.SCI", {"is_sci": False},
                   job=_job(W, "x*y, z", "x^2*z + z^2", "sci-check")),
    RegressionCase("generically-ordinary", "generic ordinarity example", {"generically_ordinary": True},
                   job=_job("x y z w", "x, y", "x^2*z + y^2*w + x^4 + y^4", "ordinary-check")),
    RegressionCase("not-generically-ordinary", "generic ordinarity example", {"generically_ordinary": False},
                   job=_job(W, "x, y", "x^3*z + y^4", "ordinary-check")),
    RegressionCase("milnor-weighted", "Milnor-Orlik product", {"mu": 4},
                   job="RING\nx y\nWEIGHTS\n1 1\nCOMMAND\nmilnor\nOPTIONS\ndegrees = 3\n", tag="TRIVIAL"),
    RegressionCase("milnor-ci", "Lê-Greuel formula", {"mu": 3},
                   job="RING\nx y\nX\nx^2 + y^3, y^2 + x^3\nCOMMAND\nmilnor\n", tag="DERIVED"),
    RegressionCase("weighted-grid", "Greuel-Hamm series", {"grid_size": 1008, "disagreements": 0},
                   script=_weighted_grid, tag="DERIVED"),
    RegressionCase("classical-quadric", "classical discriminant", {"elimination": ["b^2 - 4*a*c"]},
                   job="RING\nu v a b c\nX\na*u^2 + b*u*v + c*v^2\nCOMMAND\nclassical-disc\nOPTIONS\nfiber = u v\n",
                   tag="TRIVIAL"),
    RegressionCase("classical-cubic", "classical discriminant", {"discriminant": "4*p^3 + 27*q^2"},
                   job="RING\nu v p q\nX\nu^3 + p*u*v^2 + q*v^3\nCOMMAND\nclassical-disc\nOPTIONS\nfiber = u v\n",
                   tag="DERIVED"),
    RegressionCase("classical-degree-one", "Ex.Discriminant.Classical.is.empty.for.deg=1", {"empty": True},
                   job="RING\nu v w a b\nX\nu + a*v + b*w, v + a*w\nCOMMAND\nclassical-disc\nOPTIONS\nfiber = u v w\n"),
    RegressionCase("classical-mult-icis-1", "one-parameter multiplicity remark",
                   {"multiplicity": 5, "mu": 3, "mu_hat": 2},
                   job="RING\nx y s\nX\nx^2 + y^3 + s, y^2 + x^3\nCOMMAND\nclassical-mult\nOPTIONS\nfiber = x y\n",
                   tag="DERIVED"),
    RegressionCase("classical-mult-icis-2", "one-parameter multiplicity remark",
                   {"multiplicity": 4, "mu": 3, "mu_hat": 1},
                   job="RING\nx y s\nX\nx*y + s, x^2 + y^2\nCOMMAND\nclassical-mult\nOPTIONS\nfiber = x y\n",
                   tag="DERIVED"),
    RegressionCase("truncation-fast-dying", "infinitesimal determination", {"precondition": True, "holds": True},
                   script=lambda: _truncation("x^3*z - y^3 - x^4"), tag="DERIVED"),
    RegressionCase("truncation-whitney", "infinitesimal determination", {"precondition": True, "holds": True},
                   script=lambda: _truncation("x^2*z^2 - y^2"), tag="DERIVED"),
]


def run_case(case: RegressionCase) -> CaseResult:
    try:
        if case.script is not None:
            actual = case.script()
        else:
            actual = run(parse_job(case.job), RunOptions()).result
        err = None
    except TransdiscError as exc:
        actual, err = {}, exc
    mismatches = []
    if case.expect_error is not None:
        name = getattr(err, "hypothesis", None)
        if name != case.expect_error:
            got = repr(err) if err else "success"
            mismatches.append(f"expected error {case.expect_error!r}, got {got}")
    elif err is not None:
        mismatches.append(f"unexpected error: {err}")
    else:
        for key, want in case.expected.items():
            got = val(actual.get(key, "<missing>"))
            if got != val(want):
                mismatches.append(f"{key}: expected {val(want)!r}, got {got!r}")
    return CaseResult(case.name, case.source, not mismatches, mismatches, val(actual))


def corpus_run(case_filter: str | None = None, cases=None) -> list:
    """Run every case (or those whose name contains ``case_filter``), sorted by name."""
    cases = CASES if cases is None else cases
    chosen = [c for c in cases if not case_filter or case_filter in c.name]
    return [run_case(c) for c in sorted(chosen, key=lambda c: c.name)]


def corrupted(case: RegressionCase, key: str, value) -> RegressionCase:
    """Copy of ``case`` with one expected value replaced (harness self-test)."""
    exp = dict(case.expected)
    exp[key] = value
    return RegressionCase(case.name, case.source, exp, case.job, case.script, case.tag, case.expect_error,
                          case.quoted)


__all__ = ["CASES", "RegressionCase", "CaseResult", "corpus_run", "run_case", "corrupted", "mpq"]
