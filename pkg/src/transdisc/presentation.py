"""Presentation of ``pi_* O_Crit`` as a free module and its determinant.

At a point of Z the critical scheme is locally presented by the operator
"multiply by F_1" on ``M' = O_Z[[u]] / (F_2..F_r, maximal minors of dF/du)``,
a free ``O_Z``-module whose rank is ``mu + mu_hat_1`` of the fiber
singularity.  The determinant of that operator is a local equation of Db.

Two routes compute the operator.  If a Groebner basis of the ideal above
(block order with u before the base variables) has only pure-u leading
monomials and the right number of standard monomials, the module is free
globally and the matrix is exact.  Otherwise all base arithmetic is done
modulo ``(base maximal ideal)^(D+1)`` and the u-variables are localised
at the critical point with ``u_i^N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement


from .errors import HypothesisError, NotFiniteError
from .groebner import Ideal, groebner, local_colength_at_origin, rational_points
from .groebner.ideal import MAX_LOCAL_N, standard_monomials
from .polycore import MonomialOrder, Polynomial, RingSpec
from .polycore.matrix import determinant, jacobian, minors


class PresentationUnavailable(HypothesisError):
    def __init__(self, message: str):
        super().__init__("presentation", message)


def milnor_colength(hs) -> int:
    """Milnor number of the ICIS germ ``h_1 = .. = h_r = 0`` at the origin.

    ``r = 1`` is the Jacobian colength.  For ``r >= 2`` the Le-Greuel
    formula ``mu(h_1..h_r) + mu(h_2..h_r) = dim O/(h_2..h_r, r x r minors)``
    is solved recursively, with ``mu() = 0`` for the empty sequence.
    """
    hs = [h for h in hs]
    if not hs:
        return 0
    ring = hs[0].ring
    if any(h.constant_term() != 0 for h in hs):
        raise HypothesisError("singular germ", "some equation does not vanish at the origin")
    if len(hs) > ring.nvars:
        raise HypothesisError("ICIS", "more equations than variables")
    if len(hs) == 1:
        J = Ideal([hs[0].diff(v) for v in ring.variables], ring)
        if not J.gens:
            raise NotFiniteError("constant germ")
        return int(local_colength_at_origin(J))
    mins = minors(jacobian(hs, ring.variables), len(hs))
    lam = int(local_colength_at_origin(Ideal(hs[1:] + [m for m in mins if not m.is_zero()], ring)))
    return lam - milnor_colength(hs[1:])


@dataclass
class LocalFamily:
    """Equations ``F_1..F_r`` in ``base + fiber`` variables, centred at the origin."""

    ring: RingSpec
    base_vars: tuple
    fiber_vars: tuple
    equations: tuple
    max_order: int = 2
    label: str = ""
    fiber_local: bool = True

    def fiber_germs(self):
        ring = RingSpec(self.fiber_vars)
        return [f.substitute({v: 0 for v in self.base_vars}, self.ring).in_ring(ring) for f in self.equations]


def _module_gens(equations, fiber_vars):
    eqs = list(equations)
    mins = minors(jacobian(eqs, fiber_vars), len(eqs))
    return eqs[1:] + [m for m in mins if not m.is_zero()]


@dataclass(frozen=True)
class FiberBasis:
    monomials: tuple
    mu: int | None
    mu_hat: int | None
    n: int | None

    @property
    def size(self) -> int:
        return len(self.monomials)


def fiber_basis(lf: LocalFamily) -> FiberBasis:
    """Standard monomials of the local fiber algebra (``mu + mu_hat_1`` of them).

    For a family that is not localised in the fiber the whole affine
    fiber algebra is used and ``mu``, ``mu_hat`` are left undetermined.
    """
    hs = lf.fiber_germs()
    ring = hs[0].ring
    J0 = Ideal(_module_gens(hs, ring.variables), ring)
    if not lf.fiber_local:
        if J0.is_unit() or J0.krull_dimension() > 0:
            raise PresentationUnavailable("affine chart fiber of the module is not finite")
        return FiberBasis(tuple(standard_monomials(J0)), None, None, None)
    c = local_colength_at_origin(J0)
    N = max(getattr(c, "n", 2), 2)
    K = J0 + [Polynomial.var(ring, v) ** N for v in ring.variables]
    mons = standard_monomials(K)
    mu = milnor_colength(hs)
    mu_hat = milnor_colength(hs[1:]) if len(hs) > 1 else 0
    if len(mons) != mu + mu_hat:
        raise AssertionError(f"fiber basis size {len(mons)} differs from mu + mu_hat = {mu + mu_hat}")
    return FiberBasis(tuple(mons), mu, mu_hat, N)


@dataclass
class MultiplicationData:
    basis: tuple
    operator: list
    matrices: dict
    mode: str
    D: int | None
    N: int | None
    lf: LocalFamily
    gb: object = None


def _z_monomials(ring, names, degree):
    out = []
    idx = [ring.index(v) for v in names]
    for combo in combinations_with_replacement(range(len(names)), degree):
        e = [0] * ring.nvars
        for i in combo:
            e[idx[i]] += 1
        out.append(Polynomial.monomial(ring, tuple(e)))
    return out


def _read_matrix(G, ring, basis, fiber_idx, base_idx, poly_of_basis):
    """Rows: coordinates of ``poly_of_basis(alpha)`` on the u-basis, entries in k[z]."""
    pos = {b: i for i, b in enumerate(basis)}
    rows = []
    for alpha in basis:
        nf = G.reduce(poly_of_basis(alpha))
        row = [dict() for _ in basis]
        for e, c in nf.terms.items():
            ue = tuple(e[i] for i in fiber_idx)
            if ue not in pos:
                raise PresentationUnavailable("normal form left the expected basis")
            ze = [0] * ring.nvars
            for i in base_idx:
                ze[i] = e[i]
            row[pos[ue]][tuple(ze)] = c
        rows.append([Polynomial(ring, d, _trusted=True) for d in row])
    return rows


def _u_exp_to_poly(ring, fiber_vars, exp):
    e = [0] * ring.nvars
    for v, a in zip(fiber_vars, exp):
        e[ring.index(v)] = a
    return Polynomial.monomial(ring, tuple(e))


def multiplication_matrices(lf: LocalFamily, D: int | None = None, fb: FiberBasis | None = None,
                            allow_exact: bool = True) -> MultiplicationData:
    """Matrices of ``F_1`` and of each fiber variable on the basis of ``M'``."""
    fb = fb or fiber_basis(lf)
    ring = lf.ring
    u, z = lf.fiber_vars, lf.base_vars
    order = MonomialOrder.elimination(u)
    gens = _module_gens(lf.equations, u)
    fiber_idx = [ring.index(v) for v in u]
    base_idx = [ring.index(v) for v in z]
    F1 = lf.equations[0]
    target = fb.size

    def build(G, basis, mode, Dv, Nv):
        def times(p):
            return lambda alpha: p * _u_exp_to_poly(ring, u, alpha)

        op = _read_matrix(G, ring, basis, fiber_idx, base_idx, times(F1))
        mats = {v: _read_matrix(G, ring, basis, fiber_idx, base_idx, times(Polynomial.var(ring, v))) for v in u}
        if Dv is not None:
            op = [[e.truncate(z, Dv) for e in row] for row in op]
        return MultiplicationData(tuple(basis), op, mats, mode, Dv, Nv, lf, G)

    def pure_u_basis(G, allow_z_monomials):
        for lm in G.leading_monomials():
            has_u = any(lm[i] for i in fiber_idx)
            has_z = any(lm[i] for i in base_idx)
            if has_u and has_z:
                return None
            if has_z and not allow_z_monomials:
                return None
        std_u = []
        uleads = [tuple(lm[i] for i in fiber_idx) for lm in G.leading_monomials()
                  if any(lm[i] for i in fiber_idx)]
        # enumerate u-monomials not divisible by a pure-u lead
        n = len(u)
        if any(not any(m[i] and sum(m) == m[i] for m in uleads) for i in range(n)):
            return None
        stack = [((0,) * n, 0)]
        while stack:
            exp, start = stack.pop()
            std_u.append(exp)
            if len(std_u) > 10 * target + 10:
                return None
            for i in range(start, n):
                ne = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
                if not any(all(a >= b for a, b in zip(ne, m)) for m in uleads):
                    stack.append((ne, i))
        return sorted(std_u)

    if allow_exact and gens:
        G = groebner(gens, order, ring=ring)
        basis = pure_u_basis(G, False)
        if basis is not None and len(basis) == target:
            return build(G, basis, "exact", None, None)
    if D is None:
        D = default_truncation(lf, fb)
    Nv = max(fb.n or 2, 2)
    while Nv <= MAX_LOCAL_N:
        extra = _z_monomials(ring, z, D + 1)
        if lf.fiber_local:
            extra += [Polynomial.var(ring, v) ** Nv for v in u]
        G = groebner(list(gens) + extra, order, ring=ring)
        # u^N too small shows up as a pure-z lead of degree <= D
        low_z = any(not any(lm[i] for i in fiber_idx) and sum(lm) <= D for lm in G.leading_monomials())
        basis = None if low_z else pure_u_basis(G, True)
        if basis is not None and len(basis) == target:
            return build(G, basis, "truncated", D, Nv if lf.fiber_local else None)
        if not lf.fiber_local:
            break
        Nv *= 2
    raise PresentationUnavailable(
        f"module is not visibly free modulo m^{D + 1} (u-exponent cap {MAX_LOCAL_N} reached)"
    )


def tautology_check(md: MultiplicationData) -> bool:
    """``[F_j] = 0`` for ``j >= 2`` and every maximal-minor operator vanishes on the basis."""
    lf = md.lf
    ring = lf.ring
    for g in _module_gens(lf.equations, lf.fiber_vars):
        for alpha in md.basis:
            if not md.gb.reduce(g * _u_exp_to_poly(ring, lf.fiber_vars, alpha)).is_zero():
                return False
    return True


def default_truncation(lf: LocalFamily, fb: FiberBasis) -> int:
    return max(2 * fb.size * max(lf.max_order, 1), 2)


@dataclass
class PresentationResult:
    determinant: Polynomial
    order: int | None
    lowest_part: Polynomial | None
    D: int | None
    certificate: str
    size: int
    mu: int
    mu_hat: int
    base_vars: tuple = ()


def _lowest(det: Polynomial, z):
    order = det.order_in(z)
    low = det.homogeneous_part(z, order)
    return order, low


def _det_of(md: MultiplicationData):
    z = md.lf.base_vars
    trunc = (z, md.D) if md.D is not None else None
    return determinant(md.operator, truncate=trunc)


def presentation_determinant(lf: LocalFamily, D: int | None = None, fb: FiberBasis | None = None,
                             allow_exact: bool = True) -> PresentationResult:
    """``det [F_1]`` on ``M'``, in base coordinates centred at the point.

    The determinant is scaled so that its lowest-order part is monic.  In
    truncated mode the computation is repeated with ``D + 2`` and the order
    and lowest-order part must not change (stabilisation certificate);
    a determinant vanishing modulo ``m^(D+1)`` doubles ``D`` (up to 4x).
    """
    fb = fb or fiber_basis(lf)
    z = lf.base_vars
    base_ring = RingSpec(z)
    md = multiplication_matrices(lf, D, fb, allow_exact)
    if md.mode == "exact":
        det = _det_of(md)
        if det.is_zero():
            raise PresentationUnavailable("determinant is identically zero (F_1 is a zero divisor)")
        order, low = _lowest(det, z)
        c = low.leading_coefficient()
        det, low = det.scale(1 / c), low.scale(1 / c)
        return PresentationResult(det.in_ring(ring_with(lf, base_ring)), order, low.in_ring(base_ring),
                                  None, "exact (module free over the base polynomial ring)",
                                  fb.size, fb.mu, fb.mu_hat, z)
    D0 = md.D
    tries = 0
    while True:
        det = _det_of(md)
        if not det.is_zero():
            break
        tries += 1
        if tries > 2:
            raise PresentationUnavailable(f"determinant vanishes modulo m^{md.D + 1}")
        md = multiplication_matrices(lf, md.D * 2, fb, allow_exact=False)
    order, low = _lowest(det, z)
    check = multiplication_matrices(lf, md.D + 2, fb, allow_exact=False)
    det2 = _det_of(check)
    order2, low2 = _lowest(det2, z)
    c = low.leading_coefficient()
    c2 = low2.leading_coefficient()
    stable = order == order2 and low.scale(1 / c) == low2.scale(1 / c2)
    if not stable:
        raise PresentationUnavailable(f"determinant not stable between D={md.D} and D={md.D + 2}")
    det, low = det.scale(1 / c), low.scale(1 / c)
    cert = f"truncated mod m^{md.D + 1}; order and lowest part unchanged at D={md.D + 2}"
    if md.D != D0:
        cert += f" (D raised from {D0})"
    return PresentationResult(det.in_ring(ring_with(lf, base_ring)), order, low.in_ring(base_ring), md.D, cert,
                              fb.size, fb.mu, fb.mu_hat, z)


def ring_with(lf: LocalFamily, base_ring: RingSpec) -> RingSpec:
    return base_ring


# conormal data -> local families -------------------------------------------

def critical_fiber_points(cd, point, crit=None):
    """Rational critical points over a base point as ``(chart, {fiber var: value})``.

    Returns ``(points, complete)`` where ``complete`` says the rational
    points carry the whole fiber length.
    """
    from .groebner import local_colength_at, quotient_dim
    from .transversal import _normalize_point, crit_ideal

    crit = crit or crit_ideal(cd)
    point = _normalize_point(cd, point)
    out = []
    complete = True
    for a in range(cd.k):
        ring_a, I_a = crit.chart(a)
        fiber_vars = [y for y in cd.fiber_vars if y != cd.fiber_vars[a]]
        fring = RingSpec(tuple(fiber_vars))
        gens = [g.substitute({v: point[v] for v in cd.base_vars}, ring_a).in_ring(ring_a) for g in I_a.gens]
        gens = [g.in_ring(fring) for g in gens if not g.is_zero()] if fiber_vars else []
        if not fiber_vars:
            # k = 1: the chart is a point
            consts = [g for g in I_a.gens]
            if all(g.substitute({v: point[v] for v in cd.base_vars}, ring_a).is_zero() for g in consts):
                out.append((a, {}))
            continue
        gens += [Polynomial.var(fring, y) for y in cd.fiber_vars[:a]]
        F = Ideal(gens, fring)
        if F.is_unit():
            continue
        pts = rational_points(F)
        for p in pts:
            out.append((a, p))
        total = quotient_dim(F + [Polynomial.var(fring, y) for y in ()]) if F.gens else 0
        got = 0
        for p in pts:
            got += int(local_colength_at(F, p))
        if got != total:
            complete = False
    return out, complete


def local_family(cd, point, chart: int | None = None, fiber_point: dict | None = None, crit=None) -> LocalFamily:
    """Chart equations of the normal cone centred at a critical point over ``point``."""
    from .transversal import _normalize_point

    if not cd.coordinate:
        raise PresentationUnavailable("presentation needs Z given by coordinates")
    point = _normalize_point(cd, point)
    if chart is None or fiber_point is None:
        pts, complete = critical_fiber_points(cd, point, crit)
        if len(pts) != 1 or not complete:
            raise PresentationUnavailable(
                f"critical fiber has {len(pts)} rational point(s)" + ("" if complete else " and irrational ones")
                + "; split by chart and fiber point"
            )
        chart, fiber_point = pts[0]
    ya = cd.fiber_vars[chart]
    ring_a = cd.ring.drop([ya])
    shift = dict(point)
    shift.update(fiber_point)
    eqs = [f.substitute({ya: 1}, ring_a).translate(shift) for f in cd.leading_forms]
    fvars = tuple(v for v in cd.fiber_vars if v != ya)
    ring = RingSpec(cd.base_vars + fvars)
    eqs = [e.in_ring(ring) for e in eqs]
    return LocalFamily(ring, cd.base_vars, fvars, tuple(eqs), max(cd.orders), f"chart {ya}=1")


def chart_family(cd, point, chart: int) -> LocalFamily:
    """Chart ``y_chart = 1`` centred at ``point`` in the base only (fiber not localised)."""
    from .transversal import _normalize_point

    point = _normalize_point(cd, point)
    ya = cd.fiber_vars[chart]
    ring_a = cd.ring.drop([ya])
    eqs = [f.substitute({ya: 1}, ring_a).translate(point) for f in cd.leading_forms]
    fvars = tuple(v for v in cd.fiber_vars if v != ya)
    ring = RingSpec(cd.base_vars + fvars)
    return LocalFamily(ring, cd.base_vars, fvars, tuple(e.in_ring(ring) for e in eqs), max(cd.orders),
                       f"chart {ya}=1, whole fiber", fiber_local=False)


def _covering_chart(cd, point, crit):
    """A chart containing every critical point over ``point``, or None."""
    from .transversal import _normalize_point, crit_ideal

    crit = crit or crit_ideal(cd)
    point = _normalize_point(cd, point)
    for a in range(cd.k):
        ok = True
        for b in range(cd.k):
            if b == a:
                continue
            ring_b, I_b = crit.chart(b)
            gens = [g.substitute({v: point[v] for v in cd.base_vars}, ring_b) for g in I_b.gens]
            if not Ideal(gens + [Polynomial.var(ring_b, cd.fiber_vars[a])], ring_b).is_unit():
                ok = False
                break
        if ok:
            return a
    return None


def presentation_at_point(cd, point, D: int | None = None, crit=None) -> PresentationResult:
    """Local equation of Db at ``point``.

    Rational critical fiber points are treated one at a time and the
    determinants multiplied.  If some critical points are irrational, a
    chart containing the whole critical fiber is presented at once.
    """
    pts, complete = critical_fiber_points(cd, point, crit)
    if not complete:
        a = _covering_chart(cd, point, crit)
        if a is None:
            raise PresentationUnavailable("critical fiber has irrational points and no chart covers it")
        res = presentation_determinant(chart_family(cd, point, a), D)
        res.certificate = f"whole fiber in chart {cd.fiber_vars[a]}=1: {res.certificate}"
        return res
    if not pts:
        raise PresentationUnavailable("no critical points over this point")
    results = [presentation_determinant(local_family(cd, point, a, p, crit), D) for a, p in pts]
    if len(results) == 1:
        return results[0]
    det = results[0].determinant
    low = results[0].lowest_part
    Dmin = None
    for r in results[1:]:
        det = det * r.determinant
        low = low * r.lowest_part
    Ds = [r.D for r in results if r.D is not None]
    if Ds:
        Dmin = min(Ds)
        det = det.truncate(cd.base_vars, Dmin)
    order = sum(r.order for r in results)
    cert = "; ".join(r.certificate for r in results)
    return PresentationResult(det, order, low, Dmin, f"product over {len(results)} fiber points: {cert}",
                              sum(r.size for r in results), sum(r.mu for r in results),
                              sum(r.mu_hat for r in results), cd.base_vars)


# constant term --------------------------------------------------------------

def one_parameter_family(hs, j: int, s: str = "s") -> LocalFamily:
    """``(h_1, .., h_j + s, .., h_r)`` over the s-line."""
    fring = hs[0].ring
    s = fring.fresh(s, 1, numbered=False)[0]
    ring = RingSpec((s,) + fring.variables)
    eqs = [h.in_ring(ring) for h in hs]
    eqs[j] = eqs[j] + Polynomial.var(ring, s)
    order = [eqs[j]] + [e for i, e in enumerate(eqs) if i != j]
    maxp = max(max(h.order_in(fring.variables), 1) for h in hs)
    return LocalFamily(ring, (s,), fring.variables, tuple(order), maxp, f"s deforms equation {j + 1}")


def constant_term_shape(hs, verify: bool = False):
    """Exponents of the forced monomials ``s_j^(mu + mu_jhat)`` in the determinant.

    Returns ``{j: mu + mu_jhat}``; with ``verify`` each exponent is checked
    against the order of the presentation determinant of the
    one-parameter deformation of equation j.
    """
    hs = list(hs)
    mu = milnor_colength(hs)
    out = {}
    for j in range(len(hs)):
        others = [h for i, h in enumerate(hs) if i != j]
        out[j] = mu + (milnor_colength(others) if others else 0)
        if verify:
            lf = one_parameter_family(hs, j)
            fb = fiber_basis(lf)
            res = presentation_determinant(lf, fb=fb)
            if res.order != out[j] or len(res.lowest_part.terms) != 1:
                raise AssertionError(f"determinant order {res.order} differs from {out[j]}")
    return out
