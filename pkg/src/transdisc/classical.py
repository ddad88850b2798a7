"""Classical discriminants of families of complete intersections.

A family is a tuple of equations in fiber variables (homogeneous for
projective families, arbitrary for germ families at the origin) whose
coefficients depend on parameters.  The discriminant is the image of the
critical scheme; binary forms and quadrics also have closed formulas
(Sylvester resultant of the partial derivatives, symmetric determinant)
that serve as an independent route.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import HypothesisError, NotFiniteError
from .groebner import Ideal, eliminate, local_colength_at, local_colength_at_origin
from .polycore import Polynomial, RingSpec, parse_polynomials, to_rational
from .polycore.bridge import gcd
from .polycore.matrix import determinant, jacobian, minors


@dataclass
class FamilySetup:
    ring: RingSpec
    fiber_vars: tuple
    param_vars: tuple
    equations: tuple

    def __post_init__(self):
        self.fiber_vars = tuple(self.fiber_vars)
        self.param_vars = tuple(self.param_vars)
        self.equations = tuple(f.in_ring(self.ring) for f in self.equations)
        if set(self.fiber_vars) & set(self.param_vars):
            raise ValueError("fiber and parameter variables overlap")
        missing = set(self.ring.variables) - set(self.fiber_vars) - set(self.param_vars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} are neither fiber nor parameter")

    @classmethod
    def from_strings(cls, fiber_vars, param_vars, equations, params=None):
        fiber_vars = tuple(fiber_vars)
        param_vars = tuple(param_vars)
        ring = RingSpec(fiber_vars + param_vars)
        eqs = []
        for e in ([equations] if isinstance(equations, str) else equations):
            eqs.extend(parse_polynomials(e, ring, params))
        return cls(ring, fiber_vars, param_vars, tuple(eqs))

    @property
    def r(self) -> int:
        return len(self.equations)

    @cached_property
    def homogeneous(self) -> bool:
        return all(f.is_homogeneous(self.fiber_vars) for f in self.equations)

    @cached_property
    def param_ring(self) -> RingSpec:
        return self.ring.drop(self.fiber_vars)


def classical_crit_ideal(fs: FamilySetup) -> Ideal:
    """Equations plus maximal minors of the fiber Jacobian.

    Homogeneous families are saturated by the irrelevant ideal of the fiber.
    """
    eqs = list(fs.equations)
    mins = minors(jacobian(eqs, fs.fiber_vars), fs.r)
    I = Ideal(eqs + [m for m in mins if not m.is_zero()], fs.ring)
    if fs.homogeneous:
        I = I.saturate(Ideal([Polynomial.var(fs.ring, v) for v in fs.fiber_vars], fs.ring))
    return I


@dataclass(frozen=True)
class ClassicalDiscriminant:
    elimination: Ideal
    generator: Polynomial
    empty: bool


def classical_discriminant_eliminate(fs: FamilySetup) -> ClassicalDiscriminant:
    """Divisorial part of the image of the critical scheme in parameter space.

    The generator is the gcd of the elimination ideal (its codimension one
    part); a constant gcd means the discriminant is empty.
    """
    crit = classical_crit_ideal(fs)
    E = eliminate(crit, fs.fiber_vars)
    E = Ideal(E.gens, fs.param_ring)
    if not E.gens:
        raise HypothesisError("finite critical map", "every fiber is singular")
    g = gcd(list(E.gens), fs.param_ring)
    empty = g.is_constant()
    if not empty:
        g = _normalize(g)
    else:
        g = Polynomial.one(fs.param_ring)
    return ClassicalDiscriminant(E, g, empty)


def _normalize(g: Polynomial) -> Polynomial:
    """Scale to integer coefficients with positive leading coefficient (grevlex)."""
    from math import gcd as igcd

    d = g.content_lcm_denominator()
    g = g.scale(d)
    c = 0
    for v in g.terms.values():
        c = igcd(c, int(v.numerator))
    g = g.scale(to_rational(1) / c) if c else g
    if g.leading_coefficient() < 0:
        g = -g
    return g


def binary_resultant(A: Polynomial, B: Polynomial, ys) -> Polynomial:
    """Sylvester resultant of two binary forms in ``ys`` (formal degrees)."""
    y1, y2 = ys
    m = A.degree_in(ys) if not A.is_zero() else 0
    n = B.degree_in(ys) if not B.is_zero() else 0
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return Polynomial.zero(ring)
    if m == 0 and n == 0:
        return Polynomial.one(ring)
    ca = A.coefficients_in(ys)
    cb = B.coefficients_in(ys)
    a = [ca.get((m - i, i), Polynomial.zero(ring)) for i in range(m + 1)]
    b = [cb.get((n - i, i), Polynomial.zero(ring)) for i in range(n + 1)]
    size = m + n
    zero = Polynomial.zero(ring)
    rows = []
    for r in range(n):
        rows.append([a[c - r] if 0 <= c - r <= m else zero for c in range(size)])
    for r in range(m):
        rows.append([b[c - r] if 0 <= c - r <= n else zero for c in range(size)])
    return determinant(rows)


def binary_form_discriminant(F: Polynomial, ys) -> Polynomial:
    """Discriminant of a binary form up to a nonzero constant: ``Res(F_y1, F_y2)``."""
    p = F.degree_in(ys)
    if p < 2:
        return Polynomial.one(F.ring)
    return binary_resultant(F.diff(ys[0]), F.diff(ys[1]), ys)


def quadric_discriminant(F: Polynomial, ys) -> Polynomial:
    """Determinant of the symmetric matrix of a quadratic form in ``ys``."""
    ring = F.ring
    k = len(ys)
    coeffs = F.coefficients_in(ys)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            e = [0] * k
            e[i] += 1
            e[j] += 1
            c = coeffs.get(tuple(e), Polynomial.zero(ring))
            row.append(c if i == j else c.scale(to_rational(1) / 2))
        rows.append(row)
    return determinant(rows)


@dataclass(frozen=True)
class ClassicalMultiplicity:
    value: int
    deformed_index: int | None = None
    mu: int | None = None
    mu_hat: int | None = None


def _deformed_index(fs: FamilySetup):
    """Index j if the family has the one-parameter form ``h_j + c*s`` with all other h free of s."""
    if len(fs.param_vars) != 1:
        return None
    s = fs.param_vars[0]
    hits = [j for j, f in enumerate(fs.equations) if f.involves([s])]
    if len(hits) != 1:
        return None
    j = hits[0]
    f = fs.equations[j]
    dep = f - f.substitute({s: 0})
    cs = dep.coefficients_in([s])
    if set(cs) != {(1,)} or not cs[(1,)].is_constant():
        return None
    return j


def classical_multiplicity(fs: FamilySetup, point=None) -> ClassicalMultiplicity:
    """Length of ``pi_* O_Crit`` at a parameter point.

    Germ families (not homogeneous in the fiber) are localised at the
    fiber origin; projective families sum over the affine charts with the
    first-nonzero-coordinate rule.  For the one-parameter form
    ``(h_1, .., h_j + s, .., h_r)`` the value splits as ``mu + mu_jhat``.
    """
    from .presentation import milnor_colength

    point = point or {v: 0 for v in fs.param_vars}
    if not isinstance(point, dict):
        point = dict(zip(fs.param_vars, point))
    point = {v: to_rational(point[v]) for v in fs.param_vars}
    eqs = list(fs.equations)
    mins = minors(jacobian(eqs, fs.fiber_vars), fs.r)
    gens = eqs + [m for m in mins if not m.is_zero()]
    if fs.homogeneous:
        charts = []
        for a, ya in enumerate(fs.fiber_vars):
            ring = fs.ring.drop([ya])
            I = Ideal([g.substitute({ya: 1}, ring) for g in gens], ring).translate(point)
            charts.append((I, fs.param_vars + fs.fiber_vars[:a]))
    else:
        charts = [(Ideal(gens, fs.ring).translate(point), fs.ring.variables)]
    if len(fs.param_vars) > 1:
        # every component of Crit has dimension >= dim S - 1 (determinantal height bound)
        for I, locs in charts:
            if not (I + [Polynomial.var(I.ring, v) for v in locs]).is_unit():
                raise NotFiniteError("Crit is positive dimensional over a point of a base of dimension > 1")
    value = 0
    for I, locs in charts:
        if fs.homogeneous:
            value += int(local_colength_at(I, {v: 0 for v in fs.param_vars}, extra_origin=locs[len(fs.param_vars):]))
        else:
            value += int(local_colength_at_origin(I))
    j = _deformed_index(fs) if not fs.homogeneous else None
    if j is None:
        return ClassicalMultiplicity(value)
    fiber_ring = RingSpec(fs.fiber_vars)
    hs = [f.substitute({v: point[v] for v in fs.param_vars}, fs.ring).in_ring(fiber_ring) for f in eqs]
    mu = milnor_colength(hs)
    others = [h for i, h in enumerate(hs) if i != j]
    mu_hat = milnor_colength(others) if others else 0
    return ClassicalMultiplicity(value, j, mu, mu_hat)
