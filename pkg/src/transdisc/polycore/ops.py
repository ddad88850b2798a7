"""Weighted degree, homogenisation and derivatives as free functions."""
from __future__ import annotations

from dataclasses import dataclass

from .polynomial import Polynomial
from .ring import RingSpec


@dataclass(frozen=True)
class NotWeightedHomogeneous:
    """Two terms of different weighted degree."""

    witness: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return "not weighted homogeneous"


def weighted_degree(f: Polynomial, ring: RingSpec | None = None):
    """Common weighted degree of all terms, or ``NotWeightedHomogeneous``."""
    if f.is_zero():
        raise ValueError("zero polynomial has no weighted degree")
    ring = ring or f.ring
    w = [ring.weight(v) for v in f.ring.variables]
    by_deg = {}
    for e, c in f.sorted_terms():
        by_deg.setdefault(sum(a * b for a, b in zip(w, e)), Polynomial.monomial(f.ring, e, c))
    if len(by_deg) == 1:
        return next(iter(by_deg))
    lo, hi = sorted(by_deg)[:2]
    return NotWeightedHomogeneous((by_deg[lo], by_deg[hi]))


def homogenize(f: Polynomial, new_var: str) -> Polynomial:
    """Homogenise with a new variable appended to the ring."""
    if new_var in f.ring:
        raise ValueError(f"variable {new_var!r} already in the ring")
    ring = f.ring.extend([new_var])
    if f.is_zero():
        return Polynomial.zero(ring)
    d = f.total_degree()
    terms = {e + (d - sum(e),): c for e, c in f.terms.items()}
    return Polynomial(ring, terms)


def dehomogenize(f: Polynomial, var: str, value=1, drop: bool = True) -> Polynomial:
    ring = f.ring.drop([var]) if drop else f.ring
    return f.substitute({var: value}, ring)


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.diff(var)
