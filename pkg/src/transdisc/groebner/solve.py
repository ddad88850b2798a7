"""Rational points of zero-dimensional ideals."""
from __future__ import annotations

from ..errors import NotFiniteError
from ..polycore import Polynomial
from ..polycore.bridge import gcd, univariate_rational_roots
from .ideal import Ideal, as_ideal, eliminate, krull_dimension


def univariate_eliminant(I: Ideal, name: str) -> Polynomial:
    """Monic generator of ``I cap Q[name]`` (zero if the intersection is zero)."""
    others = [v for v in I.ring.variables if v != name]
    E = eliminate(I, others)
    if not E.gens:
        return Polynomial.zero(E.ring)
    return gcd(list(E.gens), E.ring)


def rational_points(I) -> list[dict]:
    """All points of ``V(I)`` with rational coordinates (I zero-dimensional).

    Points are returned as ``{variable: rational}`` in lexicographic order.
    """
    I = as_ideal(I)
    if I.is_unit():
        return []
    if krull_dimension(I) > 0:
        raise NotFiniteError(f"{I} is not zero dimensional")
    return sorted(_points(I), key=lambda p: tuple(p[v] for v in I.ring.variables))


def _points(I: Ideal):
    ring = I.ring
    if I.is_unit():
        return []
    v = ring.variables[0]
    elim = univariate_eliminant(I, v)
    if elim.is_zero():
        raise NotFiniteError("positive dimensional component")
    roots = univariate_rational_roots(elim, v)
    if ring.nvars == 1:
        return [{v: r} for r in roots]
    sub = ring.drop([v])
    out = []
    for r in roots:
        gens = [g.substitute({v: r}).in_ring(sub) for g in I.gens]
        J = Ideal([g for g in gens if not g.is_zero()], sub)
        if any(g.is_constant() and not g.is_zero() for g in J.gens):
            continue
        if not J.gens:
            raise NotFiniteError("positive dimensional component")
        for p in _points(J):
            q = {v: r}
            q.update(p)
            out.append(q)
    return out
