"""Critical locus of the fiberwise discriminant and the transversal discriminant Db.

The projectivised normal cone ``P(N_Z X) subset Z x P^{k-1}`` is cut out by
the leading forms ``f~_j``.  Its critical scheme ``Crit`` adds the maximal
minors of the y-Jacobian; Db is the image of Crit in Z, with multiplicity
at a point equal to the length of ``pi_* O_Crit`` over the point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field


from .errors import HypothesisError, NotFiniteError
from .filtration import (
    ConormalData,
    PairSetup,
    conormal_data,
    multiplicity_sequence,
    sci_check,
)
from .groebner import (
    Ideal,
    eliminate,
    krull_dimension,
    local_colength_at,
    local_colength_at_origin,
    localized_colength,
    rational_points,
)
from .polycore import Polynomial, RingSpec, to_rational
from .polycore.bridge import factor
from .polycore.matrix import jacobian, minors


# crit ---------------------------------------------------------------------

@dataclass
class CritData:
    cd: ConormalData
    generators: tuple
    ideal: Ideal

    def chart(self, a: int):
        return chart_ideal(self.cd, a, self.generators)


def crit_generators(cd: ConormalData) -> tuple:
    lfs = list(cd.leading_forms)
    mins = minors(jacobian(lfs, cd.fiber_vars), cd.r)
    gens = lfs + [m for m in mins if not m.is_zero()] + list(cd.z_gens)
    return tuple(gens)


def crit_ideal(cd: ConormalData) -> CritData:
    """``(f~_j) + (r x r minors of d f~/dy) + I_Z``, saturated by ``(y)``."""
    gens = crit_generators(cd)
    raw = Ideal(gens, cd.ring)
    ys = Ideal([Polynomial.var(cd.ring, y) for y in cd.fiber_vars], cd.ring)
    sat = raw.saturate(ys)
    return CritData(cd, gens, sat)


def chart_ideal(cd: ConormalData, a: int, gens=None):
    """Dehomogenisation ``y_a = 1``; returns ``(chart_ring, ideal)``."""
    if gens is None:
        gens = crit_generators(cd)
    ya = cd.fiber_vars[a]
    ring = cd.ring.drop([ya])
    out = [g.substitute({ya: 1}, ring) for g in gens]
    return ring, Ideal([g for g in out if not g.is_zero()], ring)


# support ------------------------------------------------------------------

@dataclass(frozen=True)
class OrdinaryCertificate:
    ordinary: bool
    support: Ideal
    failing_components: tuple = ()
    components_checked: bool = False


def _component_in_base(cd: ConormalData, P: Ideal) -> Ideal:
    return Ideal([cd.to_base(g) for g in P.gens], cd.base_ring)


def generically_ordinary_check(cd: ConormalData, crit: CritData | None = None) -> OrdinaryCertificate:
    """Generic ordinarity: the image of Crit is a proper subset of each component of Z."""
    crit = crit or crit_ideal(cd)
    support = eliminate(crit.ideal, cd.fiber_vars)
    support = Ideal(support.gens, cd.base_ring)
    zb = Ideal([g.in_ring(cd.base_ring) for g in cd.z_gens], cd.base_ring)
    comps = cd.setup.components
    if comps:
        failing = tuple(
            i for i, P in enumerate(comps) if _component_in_base(cd, P).contains_ideal(support)
        )
        return OrdinaryCertificate(not failing, support, failing, True)
    proper = any(not zb.contains(g) for g in support.gens)
    return OrdinaryCertificate(proper, support, (), False)


def db_support(cd: ConormalData, crit: CritData | None = None) -> Ideal:
    """Ideal of ``Db`` in ``O_Z`` (elimination of y from the saturated crit ideal)."""
    cert = generically_ordinary_check(cd, crit)
    if not cert.ordinary:
        raise HypothesisError(
            "generically ordinary",
            "the critical locus projects onto a component of Z",
            witness=[str(g) for g in cert.support.gens],
        )
    return cert.support


def _univariate_base(cd: ConormalData):
    if cd.coordinate and len(cd.base_vars) == 1:
        return cd.base_vars[0]
    return None


@dataclass(frozen=True)
class SupportPoints:
    points: tuple
    clusters: tuple
    complete: bool


def support_points(cd: ConormalData, support: Ideal) -> SupportPoints:
    """Rational points of Db and (for a coordinate line Z) irrational clusters."""
    if support.is_unit():
        return SupportPoints((), (), True)
    z = _univariate_base(cd)
    if z is not None:
        gen = support.reduced_gens()
        if len(gen) != 1:
            raise AssertionError("support ideal of a line should be principal")
        _, facs = factor(gen[0])
        pts, clusters = [], []
        for h, _m in facs:
            if h.total_degree() == 1:
                a = h.terms[(1,)]
                b = h.constant_term()
                pts.append({z: -b / a})
            else:
                clusters.append(h)
        pts.sort(key=lambda p: p[z])
        return SupportPoints(tuple(pts), tuple(clusters), True)
    full = support + [g.in_ring(support.ring) for g in cd.z_gens]
    if krull_dimension(full) > 0:
        return SupportPoints((), (), False)
    pts = rational_points(full)
    return SupportPoints(tuple(pts), (), False)


# multiplicities --------------------------------------------------------------

def _normalize_point(cd: ConormalData, point) -> dict:
    if not isinstance(point, dict):
        point = dict(zip(cd.base_vars, point))
    out = {}
    for v in cd.base_vars:
        if v not in point:
            raise ValueError(f"point is missing coordinate {v!r}")
        out[v] = to_rational(point[v])
    extra = set(point) - set(cd.base_vars)
    if extra:
        raise ValueError(f"unknown coordinates {sorted(extra)}")
    for g in cd.z_gens:
        if g.in_ring(cd.base_ring).evaluate(out) != 0:
            raise HypothesisError("point on Z", f"{out} is not a point of Z")
    return out


def random_curve(cd: ConormalData, point: dict, seed: int = 0):
    """``dim Z - 1`` random rational hyperplanes through ``point`` (in base coordinates)."""
    d = cd.base_dimension()
    rng = random.Random(seed)
    ring = cd.base_ring
    out = []
    for _ in range(max(d - 1, 0)):
        h = Polynomial.zero(ring)
        for v in cd.base_vars:
            c = rng.randint(-7, 7) or 1
            h = h + (Polynomial.var(ring, v) - point[v]).scale(c)
        out.append(h)
    return out


@dataclass(frozen=True)
class PointMultiplicity:
    point: dict
    value: int
    per_chart: tuple
    method: str = "colength"
    stabilized_n: tuple = ()
    curve: tuple = ()


def _chart_multiplicities(cd, crit, point, curve, cluster=None):
    per_chart = []
    ns = []
    for a in range(cd.k):
        ring_a, I_a = crit.chart(a)
        I_a = I_a + [c.in_ring(ring_a) for c in curve]
        if cluster is None:
            fiber = I_a + [Polynomial.var(ring_a, v) - point[v] for v in cd.base_vars]
            if krull_dimension(fiber) > 0:
                raise NotFiniteError(
                    f"critical fiber over {_fmt_point(point)} is positive dimensional in chart "
                    f"{cd.fiber_vars[a]}=1",
                )
            c = local_colength_at(I_a, point, extra_origin=cd.fiber_vars[:a])
        else:
            locs = [cluster.in_ring(ring_a)] + [Polynomial.var(ring_a, y) for y in cd.fiber_vars[:a]]
            c = localized_colength(I_a, locs)
        per_chart.append(int(c))
        ns.append(getattr(c, "n", 0))
    return per_chart, ns


def db_multiplicity_at_point(cd: ConormalData, point, curve=None, crit: CritData | None = None,
                             seed: int = 0) -> PointMultiplicity:
    """Length of ``pi_* O_Crit`` at a point of Z.

    Charts are visited in the order of the fiber variables and each
    critical point is counted in the chart of its first nonzero
    coordinate.  When ``dim Z > 1`` the count is taken along a curve
    through the point: the given one, or two independent random lines
    whose answers must agree.
    """
    crit = crit or crit_ideal(cd)
    point = _normalize_point(cd, point)
    if curve is not None:
        curve = [c.in_ring(cd.base_ring) for c in curve]
        per, ns = _chart_multiplicities(cd, crit, point, curve)
        return PointMultiplicity(point, sum(per), tuple(per), "colength", tuple(ns), tuple(curve))
    if cd.base_dimension() <= 1:
        per, ns = _chart_multiplicities(cd, crit, point, [])
        return PointMultiplicity(point, sum(per), tuple(per), "colength", tuple(ns))
    results = []
    for s in (seed, seed + 1):
        c = random_curve(cd, point, s)
        per, ns = _chart_multiplicities(cd, crit, point, c)
        results.append((sum(per), per, ns, c))
    if results[0][0] != results[1][0]:
        raise HypothesisError(
            "generic curve",
            f"multiplicity along two random curves differs ({results[0][0]} vs {results[1][0]})",
        )
    v, per, ns, c = results[0]
    return PointMultiplicity(point, v, tuple(per), "colength", tuple(ns), tuple(c))


def cluster_multiplicity(cd: ConormalData, h: Polynomial, crit: CritData | None = None) -> int:
    """Total multiplicity of Db over the roots of an irreducible ``h`` on a coordinate line."""
    crit = crit or crit_ideal(cd)
    per, _ = _chart_multiplicities(cd, crit, None, [], cluster=h)
    return sum(per)


def db_mult_splitform(f: Polynomial, h: Polynomial) -> int:
    """Multiplicity ``mu(f) * ord(h)`` for a split family ``f(x) + h(z)``.

    ``f`` lives in its own ring (a germ at the origin) and ``h`` is
    univariate in the base coordinate.
    """
    mu = local_colength_at_origin(Ideal([f.diff(v) for v in f.ring.variables], f.ring))
    return int(mu) * h.order_in(h.ring.variables)


def pullback_equation(cd: ConormalData) -> Polynomial:
    """Pull back of the classical discriminant along the coefficient map ``z -> f~(., z)``.

    Available for hypersurfaces with two fiber variables (binary forms) or
    of order two (quadrics).  The result is an equation of Db up to a
    constant factor.
    """
    from .classical import binary_form_discriminant, quadric_discriminant

    if cd.r != 1:
        raise HypothesisError("hypersurface", "the coefficient pullback needs r = 1")
    F = cd.leading_forms[0]
    p = cd.orders[0]
    if cd.k == 2:
        D = binary_form_discriminant(F, cd.fiber_vars)
    elif p == 2:
        D = quadric_discriminant(F, cd.fiber_vars)
    else:
        raise HypothesisError("binary or quadric", "no closed discriminant for this fiber type")
    return D.in_ring(cd.base_ring)


def order_at(f: Polynomial, point: dict) -> int:
    """Vanishing order of ``f`` at ``point`` (lowest degree after translation)."""
    g = f.translate({v: c for v, c in point.items() if v in f.ring})
    names = [v for v in point if v in f.ring]
    return g.order_in(names)


def _pullback_multiplicity(cd: ConormalData, point: dict) -> PointMultiplicity:
    if cd.base_dimension() != 1 or not cd.coordinate:
        raise HypothesisError("coordinate line", "pullback fallback needs a coordinate line Z")
    D = pullback_equation(cd)
    if D.is_zero():
        raise HypothesisError("generically ordinary", "discriminant pulls back to zero")
    return PointMultiplicity(point, order_at(D, point), (), "pullback")


# report -------------------------------------------------------------------

def _fmt_point(point: dict) -> str:
    from .polycore.polynomial import format_rational

    return "(" + ", ".join(f"{v}={format_rational(c)}" for v, c in point.items()) + ")"


@dataclass
class PointReport:
    point: dict
    multiplicity: int
    method: str
    per_chart: tuple = ()
    local_equation: Polynomial | None = None
    equation_order: int | None = None
    equation_certificate: str = ""


@dataclass
class DbReport:
    hypotheses: list
    orders: tuple
    leading_forms: tuple
    support: Ideal | None
    points: list
    clusters: list
    total_degree: int | None
    empty: bool
    equation: Polynomial | None = None
    notes: list = field(default_factory=list)
    base_vars: tuple = ()

    def multiplicity_map(self) -> dict:
        out = {}
        for pr in self.points:
            out[tuple(pr.point[v] for v in self.base_vars)] = pr.multiplicity
        return out


def reducedness_check(z_ideal: Ideal) -> bool:
    """Jacobian criterion: the complete intersection Z is generically reduced, hence reduced."""
    k = len(z_ideal.gens)
    ring = z_ideal.ring
    mins = minors(jacobian(list(z_ideal.gens), ring.variables), k)
    sing = z_ideal + [m for m in mins if not m.is_zero()]
    return krull_dimension(sing) < krull_dimension(z_ideal)


def db_report(setup: PairSetup, points=None, curve=None, with_presentation: bool = True,
              trunc: int | None = None, seed: int = 0) -> DbReport:
    """Support, multiplicities, local equations and the hypothesis log of Db."""
    hyps = []
    setup.validate()
    hyps.append(("Z subset X", "certified"))
    hyps.append(("Z complete intersection", "certified"))
    if not reducedness_check(setup.z_ideal):
        raise HypothesisError("Z reduced", "I_Z fails the Jacobian criterion")
    hyps.append(("Z reduced", "certified"))
    hyps.append(("components", "supplied" if setup.components else "unverified"))
    cd = conormal_data(setup, validate=False)
    sci = sci_check(cd)
    if not sci.is_sci:
        raise HypothesisError("s.c.i.", "leading forms are not a regular generating sequence",
                              witness=str(sci.witness) if sci.witness is not None else None)
    hyps.append(("s.c.i.", "certified"))
    orders, _ = multiplicity_sequence(cd)
    notes = []
    z = _univariate_base(cd)
    if all(p == 1 for p in orders):
        hyps.append(("generically ordinary", "certified"))
        hyps.append(("miniversal", "not checked"))
        notes.append("all orders are 1: the normal cone fibers are linear, Db is empty")
        eq = Polynomial.one(cd.base_ring) if z else None
        return DbReport(hyps, orders, cd.leading_forms, Ideal([Polynomial.one(cd.base_ring)]), [], [], 0,
                        True, eq, notes, cd.base_vars)
    crit = crit_ideal(cd)
    go = generically_ordinary_check(cd, crit)
    if not go.ordinary:
        raise HypothesisError("generically ordinary", "the critical locus dominates a component of Z",
                              witness=[str(g) for g in go.support.gens])
    hyps.append(("generically ordinary", "certified"))
    support = go.support
    if support.is_unit():
        hyps.append(("miniversal", "not checked"))
        eq = Polynomial.one(cd.base_ring) if z else None
        return DbReport(hyps, orders, cd.leading_forms, support, [], [], 0, True, eq, notes, cd.base_vars)
    if points is None:
        sp = support_points(cd, support)
        pts, clusters, complete = list(sp.points), list(sp.clusters), sp.complete
        if not complete:
            notes.append("irrational or non-isolated support points are not enumerated")
    else:
        pts = [_normalize_point(cd, p) for p in points]
        clusters, complete = [], False
    reports = []
    fallback_used = False
    for p in pts:
        p = _normalize_point(cd, p)
        try:
            pm = db_multiplicity_at_point(cd, p, curve=curve, crit=crit, seed=seed)
        except NotFiniteError:
            pm = _pullback_multiplicity(cd, p)
            fallback_used = True
            notes.append(f"critical fiber over {_fmt_point(p)} is not finite; multiplicity from the "
                         "pulled-back classical discriminant")
        pr = PointReport(p, pm.value, pm.method, pm.per_chart)
        if with_presentation and pm.method == "colength" and cd.coordinate:
            from .presentation import PresentationUnavailable, presentation_at_point

            try:
                pres = presentation_at_point(cd, p, D=trunc, crit=crit)
                pr.local_equation = pres.determinant
                pr.equation_order = pres.order
                pr.equation_certificate = pres.certificate
                if pres.order is not None and pres.order != pm.value and cd.base_dimension() == 1:
                    raise AssertionError(
                        f"presentation order {pres.order} differs from colength {pm.value}"
                    )
            except PresentationUnavailable as exc:
                pr.equation_certificate = f"unavailable: {exc}"
        reports.append(pr)
    cluster_rows = []
    for h in clusters:
        m = cluster_multiplicity(cd, h, crit)
        cluster_rows.append((h, m))
    total = None
    if complete:
        total = sum(r.multiplicity for r in reports) + sum(m for _, m in cluster_rows)
    eq = None
    if z is not None and complete:
        eq = Polynomial.one(cd.base_ring)
        zv = Polynomial.var(cd.base_ring, z)
        for r in reports:
            eq = eq * (zv - r.point[z]) ** r.multiplicity
        for h, m in cluster_rows:
            if m % h.total_degree():
                raise AssertionError("cluster multiplicity not divisible by the factor degree")
            eq = eq * h.in_ring(cd.base_ring) ** (m // h.total_degree())
    hyps.append(("Crit finite over support", "fallback" if fallback_used else "certified"))
    hyps.append(("miniversal", "not checked"))
    return DbReport(hyps, orders, cd.leading_forms, support, reports, cluster_rows, total, False, eq,
                    notes, cd.base_vars)


# pullback -----------------------------------------------------------------

@dataclass(frozen=True)
class PullbackCertificate:
    holds: bool
    sequence_equal: bool
    comparison: str
    pulled_back: object = None
    direct: object = None


def pullback_setup(phi: dict, setup2: PairSetup, ring1: RingSpec | None = None) -> PairSetup:
    """``phi^*`` of a pair; ``phi`` maps each variable of ``setup2.ring`` to a polynomial of ring1."""
    ring1 = ring1 or setup2.ring
    full = {}
    for v in setup2.ring.variables:
        if v in phi:
            full[v] = phi[v] if isinstance(phi[v], Polynomial) else Polynomial.constant(ring1, phi[v])
        else:
            full[v] = Polynomial.var(ring1, v)
    Z = Ideal([g.substitute(full, ring1) for g in setup2.z_ideal.gens], ring1)
    X = Ideal([g.substitute(full, ring1) for g in setup2.x_ideal.gens], ring1)
    return PairSetup(ring1, Z, X, name=f"pullback of {setup2.name}".strip())


def pullback_check(phi: dict, setup2: PairSetup, ring1: RingSpec | None = None) -> PullbackCertificate:
    """Compare Db of ``phi^*(X, Z)`` with ``phi^*`` of Db of ``(X, Z)``."""
    setup1 = pullback_setup(phi, setup2, ring1)
    if not reducedness_check(setup1.z_ideal):
        raise HypothesisError("reduced pullback", "phi^*(Z) is not reduced",
                              witness=[str(g) for g in setup1.z_ideal.gens])
    rep2 = db_report(setup2, with_presentation=False)
    rep1 = db_report(setup1, with_presentation=False)
    seq_equal = rep1.orders == rep2.orders
    if rep1.equation is not None and rep2.equation is not None:
        cd1 = conormal_data(setup1, validate=False)
        cd2 = conormal_data(setup2, validate=False)
        ring1 = setup1.ring
        full = {v: (phi[v] if v in phi else Polynomial.var(ring1, v)) for v in setup2.ring.variables}
        images = {b: cd1.to_base(full[b] if isinstance(full[b], Polynomial) else Polynomial.constant(ring1, full[b]))
                  for b in cd2.base_vars}
        pulled = rep2.equation.substitute(images, cd1.base_ring)
        eq1 = rep1.equation
        same = Ideal([pulled], cd1.base_ring).equals(Ideal([eq1], cd1.base_ring))
        return PullbackCertificate(same and seq_equal, seq_equal, "global equations", pulled, eq1)
    same = (rep1.empty == rep2.empty) and (rep1.total_degree is None or rep2.total_degree is None
                                           or rep1.empty == rep2.empty)
    return PullbackCertificate(same and seq_equal, seq_equal, "support emptiness", rep2.empty, rep1.empty)


# truncation invariance ------------------------------------------------------

@dataclass(frozen=True)
class TruncationCertificate:
    precondition: bool
    holds: bool | None
    threshold: int
    perturbations: tuple
    detail: str = ""


def _report_signature(rep: DbReport):
    pts = tuple(sorted((tuple(p.point[v] for v in rep.base_vars), p.multiplicity) for p in rep.points))
    cl = tuple(sorted((str(h), m) for h, m in rep.clusters))
    return (rep.orders, rep.empty, pts, cl, rep.total_degree)


def truncation_invariance_check(setup: PairSetup, perturbations=None, seed: int = 0) -> TruncationCertificate:
    """Db is unchanged by adding ``tau_j in I_Z^(p_r + 1)`` to the generators.

    Without explicit perturbations random ones are drawn.  If a supplied
    perturbation is not in ``I_Z^(p_r + 1)`` the precondition is reported
    as violated and nothing is compared.
    """
    cd = conormal_data(setup)
    thr = max(cd.orders) + 1
    powI = setup.z_ideal.power(thr)
    if perturbations is None:
        rng = random.Random(seed)
        ring = setup.ring
        perturbations = []
        for _ in setup.x_ideal.gens:
            tau = Polynomial.zero(ring)
            gens = list(powI.gens)
            for g in rng.sample(gens, min(2, len(gens))):
                v = rng.choice(ring.variables)
                tau = tau + g * (Polynomial.var(ring, v).scale(rng.randint(1, 5)) + rng.randint(-3, 3))
            perturbations.append(tau)
    perturbations = [t.in_ring(setup.ring) for t in perturbations]
    if not all(powI.contains(t) for t in perturbations):
        return TruncationCertificate(False, None, thr, tuple(perturbations),
                                     f"perturbation not in I_Z^{thr}")
    new_gens = [f + t for f, t in zip(setup.x_ideal.gens, perturbations)]
    setup2 = PairSetup(setup.ring, setup.z_ideal, Ideal(new_gens, setup.ring), setup.components)
    cd2 = conormal_data(setup2)
    same_forms = cd.orders == cd2.orders and all(
        Ideal(list(cd.z_gens), cd.ring).reduce(a - b).is_zero() if cd.z_gens else (a - b).is_zero()
        for a, b in zip(cd.leading_forms, cd2.leading_forms)
    )
    r1 = db_report(setup, with_presentation=False)
    r2 = db_report(setup2, with_presentation=False)
    holds = same_forms and _report_signature(r1) == _report_signature(r2)
    return TruncationCertificate(True, holds, thr, tuple(perturbations),
                                 "leading forms and Db agree" if holds else "difference detected")


# families -----------------------------------------------------------------

@dataclass(frozen=True)
class FamilyDegrees:
    samples: tuple
    degrees: tuple
    sequences: tuple
    constant: bool
    flat: bool


def specialize(setup: PairSetup, param: str, value) -> PairSetup:
    ring = setup.ring.drop([param])
    value = to_rational(value)
    Z = Ideal([g.substitute({param: value}, ring) for g in setup.z_ideal.gens], ring)
    X = Ideal([g.substitute({param: value}, ring) for g in setup.x_ideal.gens], ring)
    comps = None
    if setup.components:
        comps = tuple(Ideal([g.substitute({param: value}, ring) for g in c.gens], ring) for c in setup.components)
    return PairSetup(ring, Z, X, comps, name=f"{setup.name} {param}={value}".strip())


def family_db_degrees(setup: PairSetup, param: str, samples) -> FamilyDegrees:
    """Total degree of Db at each specialisation ``param = sample``.

    Non-constancy of the degrees, or a change of the multiplicity
    sequence, is flagged (the family is then not equisingular/flat along Z).
    """
    degs, seqs = [], []
    for s in samples:
        rep = db_report(specialize(setup, param, s), with_presentation=False)
        degs.append(rep.total_degree)
        seqs.append(rep.orders)
    return FamilyDegrees(tuple(to_rational(s) for s in samples), tuple(degs), tuple(seqs),
                         len(set(degs)) == 1, len(set(seqs)) == 1)
