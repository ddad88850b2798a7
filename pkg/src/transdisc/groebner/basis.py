from __future__ import annotations

from dataclasses import dataclass

from ..polycore import GREVLEX, MonomialOrder, Polynomial, RingSpec
from .engine import Budget, Reducer, buchberger, lcm_exp


@dataclass(frozen=True)
class DivisionCertificate:
    """``f = sum(cofactors[i] * basis[i]) + remainder``."""

    remainder: Polynomial
    cofactors: tuple
    basis: tuple

    def verify(self, f: Polynomial) -> bool:
        total = self.remainder
        for c, g in zip(self.cofactors, self.basis):
            total = total + c * g
        return total == f


class GroebnerBasis:
    """Reduced Groebner basis for a fixed ring and monomial order.

    ``generator_cofactors`` (present when built with ``track=True``) gives,
    for each element, cofactors with respect to the input generators.
    """

    def __init__(self, ring, order, elements, generators=(), generator_cofactors=None):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self.generator_cofactors = generator_cofactors
        self._key = order.key(ring)
        self._reducer = Reducer(self._key)
        self._dicts = [g.terms for g in self.elements]
        self._leads = [self._reducer.lead(d) for d in self._dicts]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and not self.elements[0].is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def leading_monomials(self):
        return tuple(self._leads)

    def reduce(self, f: Polynomial) -> Polynomial:
        f = f.in_ring(self.ring) if f.ring != self.ring else f
        r, _, _ = self._reducer.reduce(f.terms, self._dicts, self._leads, range(len(self._dicts)))
        return Polynomial(self.ring, r, _trusted=True)

    def normal_form(self, f: Polynomial) -> DivisionCertificate:
        f = f.in_ring(self.ring) if f.ring != self.ring else f
        r, quot, _ = self._reducer.reduce(
            f.terms, self._dicts, self._leads, range(len(self._dicts)), quotients=True
        )
        cof = tuple(
            Polynomial(self.ring, quot.get(i, {}), _trusted=True) for i in range(len(self._dicts))
        )
        return DivisionCertificate(Polynomial(self.ring, r, _trusted=True), cof, self.elements)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def express(self, f: Polynomial):
        """Cofactors of ``f`` w.r.t. the original generators (needs tracking).

        Returns ``(cofactors, remainder)`` with
        ``f = sum cofactors[j] * generators[j] + remainder``.
        """
        if self.generator_cofactors is None:
            raise ValueError("basis was built without cofactor tracking")
        cert = self.normal_form(f)
        out = [Polynomial.zero(self.ring) for _ in self.generators]
        for q, row in zip(cert.cofactors, self.generator_cofactors):
            if q.is_zero():
                continue
            for j, c in enumerate(row):
                if not c.is_zero():
                    out[j] = out[j] + q * c
        return tuple(out), cert.remainder

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, order={self.order})"


def _common_ring(gens, ring):
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    return ring, [g.in_ring(ring) for g in gens]


def groebner(gens, order: MonomialOrder = GREVLEX, budget: Budget | None = None,
             ring: RingSpec | None = None, track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of ``gens`` (monic, sorted by decreasing lead)."""
    ring, gens = _common_ring(gens, ring)
    key = order.key(ring)
    raw = buchberger([g.terms for g in gens], key, ring.nvars, budget, track=track)
    elements = [Polynomial(ring, d, _trusted=True) for d, _ in raw]
    gc = None
    if track:
        gc = tuple(
            tuple(Polynomial(ring, c, _trusted=True) for c in cof) for _, cof in raw
        )
    return GroebnerBasis(ring, order, elements, gens, gc)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    ef, cf = f.lead(order)
    eg, cg = g.lead(order)
    L = lcm_exp(ef, eg)
    sf = tuple(a - b for a, b in zip(L, ef))
    sg = tuple(a - b for a, b in zip(L, eg))
    return f.mul_monomial(sf, 1 / cf) - g.mul_monomial(sg, 1 / cg)


def is_groebner(polys, order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero.

    Used as an independent correctness check; it divides with a plain
    division routine that does not reuse the engine's pair bookkeeping.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return True
    ring = polys[0].ring
    monic = [p.monic(order) for p in polys]
    key = order.key(ring)
    leads = [max(p.terms, key=key) for p in monic]
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            s = s_polynomial(monic[i], monic[j], order)
            if not _plain_divide(s, monic, leads, key).is_zero():
                return False
    return True


def _plain_divide(f, basis, leads, key):
    ring = f.ring
    p = dict(f.terms)
    r = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lg in zip(basis, leads):
            if all(a >= b for a, b in zip(m, lg)):
                q = Polynomial.monomial(ring, tuple(a - b for a, b in zip(m, lg)), c)
                p = (Polynomial(ring, p, _trusted=True) - q * g).terms
                break
        else:
            r[m] = c
            del p[m]
    return Polynomial(ring, r, _trusted=True)
