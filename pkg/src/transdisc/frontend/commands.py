"""Command dispatch: a ``JobSpec`` in, a ``Report`` out."""
from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..errors import HypothesisError, ParseError
from ..groebner import Budget, Ideal, budget_scope, current_budget, groebner, is_groebner
from ..polycore import Polynomial, RingSpec, parse_polynomial
from ..polycore.polynomial import format_rational
from ..polycore.order import parse_order
from .jobspec import JobSpec

COMMANDS = (
    "gb", "leadform", "conormal", "sci-check", "mult-seq", "crit", "ordinary-check", "db-support",
    "db-mult", "db-equation", "db-report", "pullback-check", "family-degrees", "milnor", "mu-pair",
    "poincare-mu", "monomial-support", "classical-disc", "classical-mult", "corpus",
)


@dataclass
class Report:
    command: str
    hypotheses: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "hypotheses": [{"name": n, "status": s} for n, s in self.hypotheses],
            "result": self.result,
            "certificates": self.certificates,
        }


# value rendering -------------------------------------------------------------

def val(x):
    """JSON-friendly, deterministic rendering."""
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, Ideal):
        return [str(g) for g in x.reduced_gens()] if x.gens else []
    if isinstance(x, type(mpq())):
        return int(x) if x.denominator == 1 else format_rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): val(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [val(v) for v in x]
    return str(x)


def point_str(point: dict) -> str:
    return ", ".join(f"{v}={format_rational(c)}" for v, c in point.items())


# context ------------------------------------------------------------------

@dataclass
class RunOptions:
    order: str | None = None
    trunc: int | None = None
    budget: int | None = None
    verbose: bool = False


def run(job: JobSpec, opts: RunOptions | None = None) -> Report:
    opts = opts or RunOptions()
    command = job.command
    if command is None:
        raise ParseError("no command given (COMMAND section or --command)", None, "")
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}", None, command)
    handler = HANDLERS[command]
    budget = current_budget()
    if opts.budget is not None:
        budget = Budget(max_pairs=opts.budget, max_degree=budget.max_degree)
    with budget_scope(budget):
        rep = Report(command)
        handler(job, opts, rep)
    return rep


def _trunc(job, opts):
    return opts.trunc if opts.trunc is not None else job.option_int("trunc")


def _order(job, opts):
    text = opts.order or job.option("order") or "grevlex"
    try:
        return parse_order(text)
    except ValueError as exc:
        raise ParseError(str(exc), None, text) from None


def _validated(job, rep):
    setup = job.pair_setup()
    setup.validate()
    rep.hypotheses.append(("Z subset X", "certified"))
    rep.hypotheses.append(("Z complete intersection", "certified"))
    return setup


def _cd(job, rep):
    from ..filtration import conormal_data

    setup = _validated(job, rep)
    cd = conormal_data(setup, validate=False)
    return setup, cd


# handlers -----------------------------------------------------------------

def cmd_gb(job, opts, rep):
    order = _order(job, opts)
    gens = job.x_gens() or job.z_gens()
    G = groebner(gens, order, ring=job.ring)
    rep.result["order"] = order.kind
    rep.result["basis"] = [str(g) for g in G.elements]
    rep.certificates["s-polynomials reduce to zero"] = is_groebner(G.elements, order)


def cmd_leadform(job, opts, rep):
    setup, cd = _cd(job, rep)
    rep.result["base_vars"] = list(cd.base_vars)
    rep.result["fiber_vars"] = list(cd.fiber_vars)
    rep.result["orders"] = list(cd.orders)
    rep.result["leading_forms"] = [str(f) for f in cd.leading_forms]
    if opts.verbose:
        rep.result["coefficients"] = [val(c) for c in cd.coefficients]


def cmd_conormal(job, opts, rep):
    setup, cd = _cd(job, rep)
    rep.result["fiber_vars"] = list(cd.fiber_vars)
    rep.result["gr_ideal"] = val(cd.gr_ideal)
    rep.result["z_gens"] = [str(g) for g in cd.z_gens]


def _sci(cd, rep):
    from ..filtration import sci_check

    cert = sci_check(cd)
    rep.result["is_sci"] = cert.is_sci
    rep.certificates["leading forms generate gr"] = cert.generated
    rep.certificates["codimension"] = {"dimension": cert.dimension, "expected": cert.expected_dimension,
                                       "ok": cert.codim_ok}
    rep.certificates["regular sequence"] = cert.regular
    if cert.witness is not None:
        rep.result["witness"] = val(cert.witness)
    return cert


def cmd_sci_check(job, opts, rep):
    setup, cd = _cd(job, rep)
    rep.result["leading_forms"] = [str(f) for f in cd.leading_forms]
    _sci(cd, rep)


def cmd_mult_seq(job, opts, rep):
    from ..filtration import multiplicity_sequence

    setup, cd = _cd(job, rep)
    seq, prod = multiplicity_sequence(cd)
    rep.result["sequence"] = list(seq)
    rep.result["product"] = prod


def cmd_crit(job, opts, rep):
    from ..transversal import crit_ideal

    setup, cd = _cd(job, rep)
    crit = crit_ideal(cd)
    rep.result["generators"] = [str(g) for g in crit.generators]
    rep.result["saturated"] = val(crit.ideal)
    if opts.verbose:
        rep.result["charts"] = {cd.fiber_vars[a]: val(crit.chart(a)[1]) for a in range(cd.k)}


def cmd_ordinary_check(job, opts, rep):
    from ..transversal import generically_ordinary_check

    setup, cd = _cd(job, rep)
    cert = generically_ordinary_check(cd)
    rep.hypotheses.append(("components", "supplied" if setup.components else "unverified"))
    rep.result["generically_ordinary"] = cert.ordinary
    rep.result["crit_image"] = val(cert.support)
    rep.certificates["components checked"] = cert.components_checked
    if cert.failing_components:
        rep.result["failing_components"] = list(cert.failing_components)


def cmd_db_support(job, opts, rep):
    from ..transversal import db_support, support_points

    setup, cd = _cd(job, rep)
    sup = db_support(cd)
    rep.hypotheses.append(("generically ordinary", "certified"))
    sp = support_points(cd, sup)
    rep.result["support"] = val(sup)
    rep.result["empty"] = sup.is_unit()
    rep.result["points"] = [point_str(p) for p in sp.points]
    rep.result["clusters"] = [str(h) for h in sp.clusters]
    rep.certificates["points complete"] = sp.complete


def _report(job, opts, with_presentation):
    from ..transversal import db_report

    setup = job.pair_setup()
    points = None
    pt = job.point()
    if pt is not None:
        points = [pt]
    return db_report(setup, points=points, with_presentation=with_presentation, trunc=_trunc(job, opts),
                     seed=job.option_int("seed", 0))


def _emit_report(rep, r, full):
    rep.hypotheses.extend(r.hypotheses)
    rep.result["orders"] = list(r.orders)
    if full:
        rep.result["leading_forms"] = [str(f) for f in r.leading_forms]
    rep.result["support"] = val(r.support) if r.support is not None else None
    rep.result["empty"] = r.empty
    rows = []
    for p in r.points:
        row = {"point": point_str(p.point), "multiplicity": p.multiplicity, "method": p.method}
        if full and p.local_equation is not None:
            row["local_equation"] = str(p.local_equation)
            row["equation_order"] = p.equation_order
            rep.certificates[f"presentation at {point_str(p.point)}"] = p.equation_certificate
        elif full and p.equation_certificate:
            rep.certificates[f"presentation at {point_str(p.point)}"] = p.equation_certificate
        rows.append(row)
    rep.result["points"] = rows
    rep.result["multiplicities"] = {point_str(p.point): p.multiplicity for p in r.points}
    rep.result["clusters"] = [{"factor": str(h), "multiplicity": m} for h, m in r.clusters]
    rep.result["total_degree"] = r.total_degree
    if r.equation is not None:
        rep.result["equation"] = str(r.equation)
    if r.notes:
        rep.result["notes"] = list(r.notes)


def cmd_db_mult(job, opts, rep):
    _emit_report(rep, _report(job, opts, False), False)


def cmd_db_report(job, opts, rep):
    _emit_report(rep, _report(job, opts, True), True)


def cmd_db_equation(job, opts, rep):
    from ..presentation import presentation_at_point

    setup, cd = _cd(job, rep)
    pt = job.point(cd.base_vars) or {v: mpq(0) for v in cd.base_vars}
    res = presentation_at_point(cd, pt, D=_trunc(job, opts))
    rep.result["point"] = point_str(pt)
    rep.result["local_coordinates"] = "base variables shifted so the point is the origin"
    rep.result["determinant"] = str(res.determinant)
    rep.result["order"] = res.order
    rep.result["lowest_part"] = str(res.lowest_part)
    rep.result["module_rank"] = res.size
    if res.mu is not None:
        rep.result["mu"] = res.mu
        rep.result["mu_hat"] = res.mu_hat
    rep.certificates["stabilization"] = res.certificate


def cmd_pullback_check(job, opts, rep):
    from ..transversal import pullback_check

    setup = job.pair_setup()
    if not job.phi_text:
        raise ParseError("pullback-check needs a PHI section", None, "")
    cert = pullback_check(job.phi(), setup)
    rep.hypotheses.append(("reduced pullback", "certified"))
    rep.result["holds"] = cert.holds
    rep.result["pulled_back"] = val(cert.pulled_back)
    rep.result["direct"] = val(cert.direct)
    rep.certificates["multiplicity sequences equal"] = cert.sequence_equal
    rep.certificates["comparison"] = cert.comparison


def cmd_family_degrees(job, opts, rep):
    from ..polycore import to_rational
    from ..transversal import family_db_degrees

    setup = job.pair_setup()
    param = job.option("param")
    if not param:
        raise ParseError("family-degrees needs option 'param'", None, "")
    samples = [to_rational(t) for t in job.option_list("samples")] or [mpq(0), mpq(1)]
    fd = family_db_degrees(setup, param, samples)
    rep.result["samples"] = val(list(fd.samples))
    rep.result["degrees"] = list(fd.degrees)
    rep.result["sequences"] = [list(s) for s in fd.sequences]
    rep.result["constant_degree"] = fd.constant
    rep.result["flat"] = fd.constant and fd.flat


def _weights(job):
    from ..weighted import WeightData

    ws = job.weights
    if not ws:
        raise ParseError("WEIGHTS section required", None, "")
    ds = job.option_ints("degrees")
    if not ds:
        raise ParseError("option 'degrees' (equation weights) required", None, "")
    return WeightData(ws, ds)


def _fiber_germs(job):
    return job.x_gens()


def cmd_milnor(job, opts, rep):
    from ..presentation import milnor_colength
    from ..weighted import milnor_weighted_hypersurface, poincare_series_mu

    if job.option("degrees"):
        wd = _weights(job)
        if wd.r == 1:
            rep.result["mu"] = val(milnor_weighted_hypersurface(wd))
            rep.result["method"] = "weighted product"
        else:
            rep.result["mu"] = val(poincare_series_mu(wd))
            rep.result["method"] = "Poincare series"
        return
    hs = _fiber_germs(job)
    rep.result["mu"] = milnor_colength(hs)
    rep.result["method"] = "colength"


def cmd_mu_pair(job, opts, rep):
    from ..presentation import milnor_colength
    from ..weighted import mu_plus_muhat, poincare_series_mu

    if job.option("degrees"):
        wd = _weights(job)
        total = mu_plus_muhat(wd)
        rep.result["mu_plus_muhat"] = val(total)
        mu = poincare_series_mu(wd)
        rep.result["mu"] = val(mu)
        rep.result["mu_hat"] = val(poincare_series_mu(wd.drop_first()) if wd.r > 1 else mpq(0))
        rep.certificates["closed form equals series"] = total == mu + (
            poincare_series_mu(wd.drop_first()) if wd.r > 1 else 0)
        return
    hs = _fiber_germs(job)
    mu = milnor_colength(hs)
    mh = milnor_colength(hs[1:]) if len(hs) > 1 else 0
    rep.result["mu"] = mu
    rep.result["mu_hat"] = mh
    rep.result["mu_plus_muhat"] = mu + mh


def cmd_poincare_mu(job, opts, rep):
    from ..weighted import poincare_polynomial, poincare_series_mu

    wd = _weights(job)
    rep.result["mu"] = val(poincare_series_mu(wd))
    if opts.verbose:
        num, den = poincare_polynomial(wd)
        rep.result["numerator"] = [val(c) for c in num]
        rep.result["denominator"] = [val(c) for c in den]


def cmd_monomial_support(job, opts, rep):
    from ..weighted import disc_monomial_support

    wd = _weights(job)
    ring = RingSpec(job.variables)
    mons = []
    for item in (job.option("monomials") or "").split(";"):
        item = item.strip()
        if not item:
            continue
        j, _, text = item.partition(":")
        if not text:
            j, text = "1", j
        m = parse_polynomial(text, ring, job.params)
        if len(m.terms) != 1:
            raise ParseError(f"{text!r} is not a monomial", None, text)
        mons.append((int(j) - 1, next(iter(m.terms))))
    c = disc_monomial_support(wd, mons)
    rep.result["parameter_weights"] = [val(w) for w in c.param_weights]
    rep.result["target"] = val(c.target)
    rep.result["solutions"] = [list(s) for s in c.solutions]


def cmd_classical_disc(job, opts, rep):
    from ..classical import classical_discriminant_eliminate

    fs = job.family_setup()
    cdisc = classical_discriminant_eliminate(fs)
    rep.result["parameters"] = list(fs.param_vars)
    rep.result["elimination"] = val(cdisc.elimination)
    rep.result["discriminant"] = str(cdisc.generator)
    rep.result["empty"] = cdisc.empty


def cmd_classical_mult(job, opts, rep):
    from ..classical import classical_multiplicity

    fs = job.family_setup()
    pt = job.point(fs.param_vars) or {v: mpq(0) for v in fs.param_vars}
    cm = classical_multiplicity(fs, pt)
    rep.hypotheses.append(("miniversal", "not checked"))
    rep.result["point"] = point_str(pt)
    rep.result["multiplicity"] = cm.value
    if cm.deformed_index is not None:
        rep.result["deformed_equation"] = cm.deformed_index + 1
        rep.result["mu"] = cm.mu
        rep.result["mu_hat"] = cm.mu_hat
        rep.certificates["mu + mu_hat equals length"] = cm.mu + cm.mu_hat == cm.value


def cmd_corpus(job, opts, rep):
    from .corpus import corpus_run

    table = corpus_run(job.option("case"))
    rep.result["cases"] = [{"name": r.name, "status": "PASS" if r.ok else "FAIL", "source": r.source,
                            "mismatches": r.mismatches} for r in table]
    rep.result["passed"] = sum(r.ok for r in table)
    rep.result["total"] = len(table)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}

__all__ = ["COMMANDS", "Report", "RunOptions", "run", "val", "HypothesisError"]
