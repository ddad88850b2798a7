"""Determinants and minors of small polynomial matrices (Laplace expansion)."""
from __future__ import annotations

from itertools import combinations

from .polynomial import Polynomial


def determinant(rows, truncate=None):
    """Determinant of a square matrix of polynomials.

    Expansion along the first row with memoisation on the set of
    remaining columns; ``truncate=(names, D)`` drops every term of degree
    above ``D`` in ``names`` after each product, which computes the
    determinant modulo ``(names)^(D+1)``.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    memo = {}

    def trunc(p):
        if truncate is None:
            return p
        return p.truncate(truncate[0], truncate[1])

    def det(row, cols):
        if row == n:
            return Polynomial.one(ring)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = Polynomial.zero(ring)
        sign = 1
        for c in cols:
            entry = rows[row][c]
            if not entry.is_zero():
                rest = tuple(x for x in cols if x != c)
                sub = det(row + 1, rest)
                if not sub.is_zero():
                    term = trunc(entry * sub)
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return det(0, tuple(range(n)))


def minors(rows, size: int):
    """All ``size x size`` minors (rows and columns in lexicographic order)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = []
    for rs in combinations(range(m), size):
        for cs in combinations(range(n), size):
            out.append(determinant([[rows[i][j] for j in cs] for i in rs]))
    return out


def jacobian(polys, names):
    return [[f.diff(v) for v in names] for f in polys]
