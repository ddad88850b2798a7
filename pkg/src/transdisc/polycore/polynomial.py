"""Immutable sparse polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .order import GREVLEX, MonomialOrder
from .ring import RingSpec

QQ = mpq
_MPQ = type(mpq(0))


def to_rational(value):
    """Coerce int / Fraction / mpq / 'p/q' text to an exact rational."""
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return mpq(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(c) -> str:
    c = to_rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Element of Q[variables of ``ring``].

    ``terms`` maps exponent tuples to nonzero rationals.  Instances are
    treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms=None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {ring!r}")
            c = to_rational(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, _trusted=True)

    @classmethod
    def constant(cls, ring, c):
        c = to_rational(c)
        return cls(ring, {(0,) * ring.nvars: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, ring):
        return cls.constant(ring, 1)

    @classmethod
    def var(cls, ring, name):
        exp = [0] * ring.nvars
        exp[ring.index(name)] = 1
        return cls(ring, {tuple(exp): mpq(1)}, _trusted=True)

    @classmethod
    def monomial(cls, ring, exp, c=1):
        return cls(ring, {tuple(exp): c})

    @classmethod
    def gens(cls, ring):
        return tuple(cls.var(ring, v) for v in ring.variables)

    # basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def weighted_degree(self, weights=None) -> int:
        w = weights or self.ring.weights
        if not self.terms:
            return -1
        return max(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def degree_in(self, names) -> int:
        idx = [self.ring.index(v) for v in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def order_in(self, names) -> int:
        """Lowest total degree in ``names`` among the terms (-1 for zero)."""
        idx = [self.ring.index(v) for v in names]
        return min((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous(self, names=None, weights=None) -> bool:
        names = self.ring.variables if names is None else names
        idx = [self.ring.index(v) for v in names]
        w = weights or [1] * len(idx)
        degs = {sum(wi * e[i] for wi, i in zip(w, idx)) for e in self.terms}
        return len(degs) <= 1

    def is_weighted_homogeneous(self) -> bool:
        return self.is_homogeneous(self.ring.variables, self.ring.weights)

    def variables_used(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return tuple(self.ring.variables[i] for i in sorted(used))

    def involves(self, names) -> bool:
        idx = [self.ring.index(v) for v in names if v in self.ring]
        return any(e[i] for e in self.terms for i in idx)

    # ordering ---------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        key = order.key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.ring)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        return self.lead(order)[0]

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.lead(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        c = self.leading_coefficient(order)
        return self.scale(1 / c)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.variables == self.ring.variables:
                    return Polynomial(self.ring, other.terms, _trusted=True)
                raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return Polynomial.constant(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_value()
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exp, c=1) -> "Polynomial":
        c = to_rational(c)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c * v for e, v in self.terms.items()},
            _trusted=True,
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.variables == other.ring.variables and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.ring, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution -----------------------------------------
    def diff(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Polynomial(self.ring, out, _trusted=True)

    def in_ring(self, ring: RingSpec) -> "Polynomial":
        """Re-embed into ``ring`` by variable name (unused variables may be dropped)."""
        if ring.variables == self.ring.variables:
            return Polynomial(ring, self.terms, _trusted=True)
        pos = []
        for i, v in enumerate(self.ring.variables):
            pos.append(ring.index(v) if v in ring else None)
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.variables[i]!r} not in target ring")
                    ne[pos[i]] = a
            out[tuple(ne)] = c
        return Polynomial(ring, out, _trusted=True)

    def substitute(self, mapping, ring: RingSpec | None = None) -> "Polynomial":
        """Substitute variables by polynomials (or numbers) of ``ring``.

        Variables absent from ``mapping`` are kept and must exist in the
        target ring.  ``ring`` defaults to this polynomial's ring.
        """
        ring = ring or self.ring
        images = []
        for v in self.ring.variables:
            if v in mapping:
                img = mapping[v]
                img = img.in_ring(ring) if isinstance(img, Polynomial) else Polynomial.constant(ring, img)
            else:
                img = Polynomial.var(ring, v) if v in ring else None
            images.append(img)
        cache = {}
        result = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(ring, c)
            for i, a in enumerate(e):
                if not a:
                    continue
                if images[i] is None:
                    raise ValueError(f"variable {self.ring.variables[i]!r} has no image")
                k = (i, a)
                if k not in cache:
                    cache[k] = images[i] ** a
                term = term * cache[k]
            for te, tc in term.terms.items():
                v = result.get(te, 0) + tc
                if v:
                    result[te] = v
                else:
                    result.pop(te, None)
        return Polynomial(ring, result, _trusted=True)

    def evaluate(self, point):
        """Evaluate at a full assignment ``{name: rational}``."""
        vals = [to_rational(point[v]) for v in self.ring.variables]
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for x, a in zip(vals, e):
                if a:
                    t *= x ** a
            total += t
        return total

    def translate(self, shift) -> "Polynomial":
        """Substitute ``v -> v + shift[v]`` for the named variables."""
        mapping = {}
        for v, s in shift.items():
            s = to_rational(s)
            if s:
                mapping[v] = Polynomial.var(self.ring, v) + s
        return self.substitute(mapping) if mapping else self

    def coefficients_in(self, names) -> dict:
        """Group by exponents in ``names``: ``{exp_in_names: Polynomial}``.

        The coefficient polynomials still live in this ring (with zero
        exponent in ``names``).
        """
        idx = [self.ring.index(v) for v in names]
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial(self.ring, v, _trusted=True) for k, v in groups.items()}

    def homogeneous_part(self, names, degree: int) -> "Polynomial":
        idx = [self.ring.index(v) for v in names]
        return Polynomial(
            self.ring,
            {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == degree},
            _trusted=True,
        )

    def truncate(self, names, max_degree: int) -> "Polynomial":
        """Drop terms of degree > ``max_degree`` in ``names``."""
        idx = [self.ring.index(v) for v in names]
        return Polynomial(
            self.ring,
            {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) <= max_degree},
            _trusted=True,
        )

    def content_lcm_denominator(self) -> int:
        from math import lcm

        d = 1
        for c in self.terms.values():
            d = lcm(d, int(c.denominator))
        return d

    # text -------------------------------------------------------------
    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.ring.variables, e) if a
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"
