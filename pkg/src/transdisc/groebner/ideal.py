"""Ideals of Q[x] and the Groebner-based toolbox built on them."""
from __future__ import annotations

from itertools import combinations

from gmpy2 import mpq

from ..errors import NotFiniteError
from ..polycore import GREVLEX, MonomialOrder, Polynomial, RingSpec
from .basis import GroebnerBasis, groebner
from .engine import Budget, Reducer


class Ideal:
    """Finitely generated ideal with cached Groebner bases per order."""

    def __init__(self, gens, ring: RingSpec | None = None, budget: Budget | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for the zero ideal")
            ring = gens[0].ring
        self.ring = ring
        self.gens = tuple(g.in_ring(ring) for g in gens if not g.is_zero())
        self.budget = budget
        self._gb: dict = {}

    # groebner --------------------------------------------------------------
    def gb(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        if order not in self._gb:
            if not self.gens:
                self._gb[order] = GroebnerBasis(self.ring, order, ())
            else:
                self._gb[order] = groebner(self.gens, order, self.budget, ring=self.ring)
        return self._gb[order]

    def reduced_gens(self) -> tuple:
        return self.gb().elements

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if not self.gens:
            return False
        if any(g.is_constant() for g in self.gens):
            return True
        return self.gb().is_unit()

    def contains(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = Polynomial.constant(self.ring, f)
        if f.is_zero():
            return True
        if not self.gens:
            return False
        return self.gb().contains(f.in_ring(self.ring))

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        other = other.in_ring(self.ring)
        return self.contains_ideal(other) and other.contains_ideal(self)

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.gens:
            return f.in_ring(self.ring)
        return self.gb().reduce(f)

    # constructions ---------------------------------------------------------
    def in_ring(self, ring: RingSpec) -> "Ideal":
        if ring == self.ring:
            return self
        return Ideal([g.in_ring(ring) for g in self.gens], ring, self.budget)

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.gens
        return Ideal(list(self.gens) + [g.in_ring(self.ring) for g in other], self.ring, self.budget)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.gens for b in other.in_ring(self.ring).gens], self.ring, self.budget)

    def power(self, p: int) -> "Ideal":
        """``I^p`` generated by the products of ``p`` generators."""
        if p == 0:
            return Ideal([Polynomial.one(self.ring)], self.ring, self.budget)
        prods = {Polynomial.one(self.ring)}
        for _ in range(p):
            prods = {a * g for a in prods for g in self.gens}
        return Ideal(sorted(prods, key=str), self.ring, self.budget)

    def eliminate(self, names) -> "Ideal":
        return eliminate(self, names)

    def intersect(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def quotient(self, other) -> "Ideal":
        return quotient(self, other)

    def saturate(self, other) -> "Ideal":
        return saturate(self, other)

    def krull_dimension(self) -> int:
        return krull_dimension(self)

    def quotient_dim(self) -> int:
        return quotient_dim(self)

    def translate(self, shift) -> "Ideal":
        return Ideal([g.translate(shift) for g in self.gens], self.ring, self.budget)

    def substitute(self, mapping, ring=None) -> "Ideal":
        ring = ring or self.ring
        return Ideal([g.substitute(mapping, ring) for g in self.gens], ring, self.budget)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"


def as_ideal(obj, ring=None) -> Ideal:
    if isinstance(obj, Ideal):
        return obj if ring is None else obj.in_ring(ring)
    if isinstance(obj, Polynomial):
        obj = [obj]
    return Ideal(list(obj), ring)


def ideal_membership(f: Polynomial, I) -> bool:
    return as_ideal(I, f.ring).contains(f)


def ideal_equality(I, J) -> bool:
    I = as_ideal(I)
    return I.equals(as_ideal(J, I.ring))


def eliminate(I, names) -> Ideal:
    """``I`` intersected with the polynomial ring in the remaining variables."""
    I = as_ideal(I)
    names = [v for v in names if v in I.ring]
    target = I.ring.drop(names)
    if not names:
        return Ideal(I.gens, target, I.budget)
    if not I.gens:
        return Ideal([], target, I.budget)
    G = I.gb(MonomialOrder.elimination(names))
    kept = [g.in_ring(target) for g in G.elements if not g.involves(names)]
    return Ideal(kept, target, I.budget)


def _fresh_ring(ring, prefix):
    name = ring.fresh(prefix, 1, numbered=False)[0]
    return ring.extend([name]), name


def intersect(I, J) -> Ideal:
    """``I cap J`` by eliminating t from ``t*I + (1-t)*J``."""
    I = as_ideal(I)
    J = as_ideal(J, I.ring)
    if not I.gens or not J.gens:
        return Ideal([], I.ring, I.budget)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    ext, t = _fresh_ring(I.ring, "_t")
    T = Polynomial.var(ext, t)
    gens = [T * g.in_ring(ext) for g in I.gens] + [(1 - T) * g.in_ring(ext) for g in J.gens]
    E = eliminate(Ideal(gens, ext, I.budget), [t])
    return Ideal(E.gens, I.ring, I.budget)


def exact_divide(f: Polynomial, h: Polynomial) -> Polynomial:
    """Return ``f / h``; raises ValueError when ``h`` does not divide ``f``."""
    if h.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    key = GREVLEX.key(f.ring)
    red = Reducer(key)
    lm = red.lead(h.terms)
    inv = 1 / h.terms[lm]
    monic = {e: c * inv for e, c in h.terms.items()}
    rem, quot, _ = red.reduce(f.terms, [monic], [lm], [0], quotients=True)
    if rem:
        raise ValueError(f"{h} does not divide {f}")
    q = Polynomial(f.ring, quot.get(0, {}), _trusted=True)
    return q.scale(inv)


def _quotient_by(I: Ideal, h: Polynomial) -> Ideal:
    if h.is_zero():
        return Ideal([Polynomial.one(I.ring)], I.ring, I.budget)
    K = intersect(I, Ideal([h], I.ring))
    return Ideal([exact_divide(g, h) for g in K.gens], I.ring, I.budget)


def quotient(I, J) -> Ideal:
    """Ideal quotient ``I : J``."""
    I = as_ideal(I)
    J = as_ideal(J, I.ring)
    if not J.gens:
        return Ideal([Polynomial.one(I.ring)], I.ring, I.budget)
    out = None
    for h in J.gens:
        Q = _quotient_by(I, h)
        out = Q if out is None else intersect(out, Q)
    return Ideal(out.reduced_gens() if out.gens else (), I.ring, I.budget)


def _saturate_by(I: Ideal, h: Polynomial) -> Ideal:
    if h.is_constant():
        return I
    ext, u = _fresh_ring(I.ring, "_u")
    U = Polynomial.var(ext, u)
    gens = [g.in_ring(ext) for g in I.gens] + [1 - U * h.in_ring(ext)]
    E = eliminate(Ideal(gens, ext, I.budget), [u])
    return Ideal(E.gens, I.ring, I.budget)


def saturate(I, J) -> Ideal:
    """``I : J^infinity`` as the intersection of ``I : h^infinity`` over generators of J.

    Each factor is computed with the Rabinowitsch trick.
    """
    I = as_ideal(I)
    J = as_ideal(J, I.ring)
    if not J.gens:
        return Ideal([Polynomial.one(I.ring)], I.ring, I.budget)
    if not I.gens:
        return I
    out = None
    for h in J.gens:
        S = _saturate_by(I, h)
        out = S if out is None else intersect(out, S)
    return Ideal(out.reduced_gens() if out.gens else (), I.ring, I.budget)


def saturate_chain(I, J, max_steps: int = 64) -> Ideal:
    """``I : J^infinity`` via the ascending chain ``I : J^n`` (slower oracle)."""
    cur = as_ideal(I)
    J = as_ideal(J, cur.ring)
    for _ in range(max_steps):
        nxt = quotient(cur, J)
        if nxt.equals(cur):
            return cur
        cur = nxt
    raise RuntimeError("saturation chain did not stabilise")


def independent_sets(leads, nvars: int):
    """Maximal size of a variable set containing no leading monomial's support."""
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in leads]
    for s in range(nvars, -1, -1):
        for S in combinations(range(nvars), s):
            Sset = set(S)
            if not any(sup <= Sset for sup in supports):
                return s, S
    return -1, ()


def krull_dimension(I) -> int:
    """Krull dimension of ``k[x]/I``; -1 for the unit ideal."""
    I = as_ideal(I)
    if not I.gens:
        return I.ring.nvars
    G = I.gb()
    if G.is_unit():
        return -1
    d, _ = independent_sets(G.leading_monomials(), I.ring.nvars)
    return d


def standard_monomials(I, order: MonomialOrder = GREVLEX, limit: int = 200_000):
    """Exponents of the standard monomials of a zero-dimensional ideal."""
    I = as_ideal(I)
    n = I.ring.nvars
    if not I.gens:
        raise NotFiniteError("zero ideal has infinite colength")
    G = I.gb(order)
    if G.is_unit():
        return []
    leads = G.leading_monomials()
    for i in range(n):
        if not any(m[i] and sum(m) == m[i] for m in leads):
            raise NotFiniteError(
                f"quotient is not finite dimensional (no pure power of {I.ring.variables[i]})"
            )
    out = []
    stack = [((0,) * n, 0)]
    while stack:
        exp, start = stack.pop()
        out.append(exp)
        if len(out) > limit:
            raise NotFiniteError("standard monomial enumeration exceeded its limit")
        for i in range(start, n):
            ne = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
            if not any(all(a >= b for a, b in zip(ne, m)) for m in leads):
                stack.append((ne, i))
    out.sort(key=order.key(I.ring))
    return out


def quotient_dim(I) -> int:
    """``dim_Q k[x]/I`` for a zero-dimensional ideal (0 for the unit ideal)."""
    return len(standard_monomials(I))


class Colength(int):
    """An integer colength remembering the stabilising exponent ``N``."""

    def __new__(cls, value: int, n: int):
        obj = int.__new__(cls, value)
        obj.n = n
        return obj


MAX_LOCAL_N = 64


def _stabilize(I: Ideal, localizers) -> Colength:
    prev = None
    N = 2
    while N <= MAX_LOCAL_N:
        J = I + [l ** N for l in localizers]
        val = quotient_dim(J)
        if prev is not None and val == prev:
            return Colength(val, N // 2)
        prev = val
        N *= 2
    raise NotFiniteError(
        f"local colength did not stabilise up to N={MAX_LOCAL_N}; the point is not isolated"
    )


def localized_colength(I, localizers) -> Colength:
    """Length of ``k[x]/I`` localised along ``V(localizers)``.

    Computes ``dim k[x]/(I + (l^N : l in localizers))`` for
    ``N = 2, 4, 8, ...`` until two consecutive values agree.  Only the
    points of ``V(I)`` on ``V(localizers)`` contribute; those must be
    isolated.
    """
    I = as_ideal(I)
    localizers = [l.in_ring(I.ring) for l in localizers]
    if not I.gens:
        raise NotFiniteError("zero ideal is not zero dimensional")
    probe = I + localizers
    if probe.is_unit():
        return Colength(0, 0)
    return _stabilize(I, localizers)


def local_colength_at_origin(I) -> Colength:
    """``dim k[[x]]/I k[[x]]``; 0 when the origin is not in ``V(I)``."""
    I = as_ideal(I)
    if any(g.constant_term() != 0 for g in I.gens):
        return Colength(0, 0)
    return localized_colength(I, Polynomial.gens(I.ring))


def local_colength_at(I, point: dict, extra_origin=()) -> Colength:
    """Local length at ``point`` (a partial assignment) after translating it to 0.

    ``extra_origin`` lists further variables localised at 0; unlisted
    variables stay free, so every point over the given coordinates counts.
    """
    I = as_ideal(I)
    shift = {v: mpq(c) for v, c in point.items()}
    J = I.translate(shift) if any(shift.values()) else I
    locs = [Polynomial.var(I.ring, v) for v in list(point) + list(extra_origin)]
    return localized_colength(J, locs)
