"""Conversions to sympy for factorisation and gcd (not used for Groebner work)."""
from __future__ import annotations

import sympy

from .polynomial import Polynomial, to_rational
from .ring import RingSpec


def _symbols(ring: RingSpec):
    return sympy.symbols(list(ring.variables)) if ring.nvars > 1 else (sympy.Symbol(ring.variables[0]),)


def to_sympy(f: Polynomial):
    syms = _symbols(f.ring)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, a in zip(syms, e):
            if a:
                term *= s ** a
        expr += term
    return expr


def from_sympy(expr, ring: RingSpec) -> Polynomial:
    syms = _symbols(ring)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for monom, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(a) for a in monom)] = to_rational(f"{q.p}/{q.q}")
    return Polynomial(ring, terms)


def factor(f: Polynomial):
    """Irreducible factors over Q as ``(constant, [(factor, multiplicity), ...])``."""
    if f.is_constant():
        return f.constant_value(), []
    c, facs = sympy.factor_list(to_sympy(f), *_symbols(f.ring))
    q = sympy.Rational(c)
    out = [(from_sympy(g, f.ring), int(m)) for g, m in facs]
    out.sort(key=lambda t: (t[0].total_degree(), str(t[0])))
    return to_rational(f"{q.p}/{q.q}"), out


def gcd(polys, ring: RingSpec) -> Polynomial:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return Polynomial.zero(ring)
    g = to_sympy(polys[0])
    for p in polys[1:]:
        g = sympy.gcd(g, to_sympy(p))
    return from_sympy(g, ring)


def univariate_rational_roots(f: Polynomial, name: str):
    """Rational roots ``{root: multiplicity}`` of a polynomial in one variable."""
    if f.variables_used() and set(f.variables_used()) != {name}:
        raise ValueError("polynomial is not univariate in the given variable")
    _, facs = factor(f)
    roots = {}
    for g, m in facs:
        if g.total_degree() == 1:
            a = g.terms.get(tuple(1 if v == name else 0 for v in f.ring.variables), 0)
            b = g.constant_term()
            roots[-b / a] = m
    return dict(sorted(roots.items()))
