"""Closed-form invariants of weighted-homogeneous complete intersections.

Univariate polynomials are plain coefficient lists (lowest degree first)
over ``mpq``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import TransdiscError

_ZERO = mpq(0)
_ONE = mpq(1)


class FormulaSingular(TransdiscError):
    pass


@dataclass(frozen=True)
class WeightData:
    var_weights: tuple
    eq_weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "var_weights", tuple(int(w) for w in self.var_weights))
        object.__setattr__(self, "eq_weights", tuple(int(d) for d in self.eq_weights))
        if any(w <= 0 for w in self.var_weights + self.eq_weights):
            raise ValueError("weights must be positive")
        if self.n < 0:
            raise ValueError("more equations than variables")

    @property
    def k(self) -> int:
        return len(self.var_weights)

    @property
    def r(self) -> int:
        return len(self.eq_weights)

    @property
    def n(self) -> int:
        return self.k - self.r

    def drop_first(self) -> WeightData:
        return WeightData(self.var_weights, self.eq_weights[1:])


# univariate helpers --------------------------------------------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _add(a, b):
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _scale(a, c):
    return _trim([x * c for x in a])


def _order(p) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("zero polynomial has no order")


def _value_at_zero(num, den) -> mpq:
    """Limit of ``num/den`` at 0; a surviving pole raises ``FormulaSingular``."""
    if not den:
        raise FormulaSingular("zero denominator")
    if not num:
        return _ZERO
    on, od = _order(num), _order(den)
    if on < od:
        raise FormulaSingular("pole survives the limit")
    if on > od:
        return _ZERO
    return num[on] / den[od]


def _shift_to_one(p):
    """Coefficients of ``p(1 + e)`` in e (Taylor shift)."""
    out = []
    cur = [mpq(c) for c in p]
    # repeated synthetic division by (t - 1)
    while cur:
        q, rem = [], _ZERO
        for c in reversed(cur):
            rem = rem + c
            q.append(rem)
        out.append(q.pop())
        cur = _trim(list(reversed(q)))
    return _trim(out)


# formulas ------------------------------------------------------------------

def _maybe_warn(value: mpq, what: str) -> mpq:
    if value.denominator != 1:
        warnings.warn(f"{what} is not an integer ({value}); weight data look inconsistent", stacklevel=3)
    return value


def milnor_weighted_hypersurface(wd: WeightData) -> mpq:
    """``prod_i (d / w_i - 1)`` for a single equation of weight d."""
    if wd.r != 1:
        raise ValueError("expects one equation")
    d = wd.eq_weights[0]
    out = _ONE
    for w in wd.var_weights:
        out *= mpq(d, w) - 1
    return _maybe_warn(out, "Milnor number")


def mu_plus_muhat(wd: WeightData, perturbation=None) -> mpq:
    """``mu + mu_hat_1`` from the closed form in equation and variable weights.

    Each equation weight is perturbed to ``d_j + c_j * eps`` with
    ``c_j = perturbation(j)`` (default ``j``) and the value is the limit at
    ``eps = 0``, which handles repeated equation weights.
    """
    perturbation = perturbation or (lambda j: j)
    ds = [[mpq(d), mpq(perturbation(j + 1))] for j, d in enumerate(wd.eq_weights)]
    num, den = [], [_ONE]
    for j, dj in enumerate(ds):
        tn, td = list(dj), [_ONE]
        for w in wd.var_weights:
            tn = _mul(tn, [dj[0] / w - 1, dj[1] / w])
        for q, dq in enumerate(ds):
            if q == j:
                continue
            tn = _mul(tn, dq)
            td = _mul(td, _add(dj, _scale(dq, -_ONE)))
        if not td:
            raise FormulaSingular("equal equation weights with equal perturbation")
        num = _add(_mul(num, td), _mul(tn, den))
        den = _mul(den, td)
    value = _value_at_zero(num, den) / wd.eq_weights[0]
    return _maybe_warn(value, "mu + mu_hat")


def poincare_polynomial(wd: WeightData):
    """Numerator ``N(t)`` and denominator ``prod (1 - t^w_i)`` of the Poincare series.

    ``P(t)`` is the coefficient of ``tau^n`` in
    ``(1/(1+tau)) [prod (1+tau t^w_i)/(1-t^w_i) prod (1-t^d_j)/(1+tau t^d_j) - 1]``.
    """
    n = wd.n

    def mono(e, c=_ONE):
        return [_ZERO] * e + [mpq(c)]

    # coefficients in tau (truncated at tau^n), entries are polynomials in t
    series = [[_ONE]] + [[] for _ in range(n)]

    def times(series, factor):
        out = [[] for _ in range(n + 1)]
        for i, a in enumerate(series):
            if not a:
                continue
            for j, b in enumerate(factor):
                if i + j > n:
                    break
                out[i + j] = _add(out[i + j], _mul(a, b))
        return out

    for w in wd.var_weights:
        series = times(series, [[_ONE], mono(w)])
    for d in wd.eq_weights:
        series = times(series, [mono(d * m, (-1) ** m) for m in range(n + 1)])
    series = times(series, [[mpq((-1) ** m)] for m in range(n + 1)])
    cn = series[n]
    num = cn
    for d in wd.eq_weights:
        num = _mul(num, _add([_ONE], mono(d, -1)))
    den = [_ONE]
    for w in wd.var_weights:
        den = _mul(den, _add([_ONE], mono(w, -1)))
    num = _add(num, _scale(den, mpq((-1) ** (n + 1))))
    return num, den


def poincare_series_mu(wd: WeightData) -> mpq:
    """``P(1)``, the limit taken by cancelling factors ``(t - 1)``."""
    num, den = poincare_polynomial(wd)
    try:
        value = _value_at_zero(_shift_to_one(num), _shift_to_one(den))
    except FormulaSingular as exc:
        raise FormulaSingular("unexpected pole at t = 1") from exc
    return _maybe_warn(value, "Poincare series value")


# discriminant monomial support --------------------------------------------

@dataclass(frozen=True)
class MonomialSupportConstraint:
    monomials: tuple
    param_weights: tuple
    target: mpq
    solutions: tuple

    def admits(self, exponents) -> bool:
        return sum(mpq(n) * w for n, w in zip(exponents, self.param_weights)) == self.target


def disc_monomial_support(wd: WeightData, monomials) -> MonomialSupportConstraint:
    """Exponent vectors allowed in the discriminant of a weighted deformation.

    ``monomials`` lists pairs ``(j, m)``: the parameter ``s_(j,m)``
    multiplies the fiber monomial with exponent ``m`` in equation j, so it
    has weight ``w(f_j) - w(m)``.  Solutions of
    ``sum n_(j,m) (w(f_j) - w(m)) = (mu + mu_hat_1) w(f_1)`` are returned.
    """
    monomials = [(int(j), tuple(int(a) for a in m)) for j, m in monomials]
    if not monomials:
        raise ValueError("empty deformation list")
    pw = []
    for j, m in monomials:
        if len(m) != wd.k:
            raise ValueError("monomial length differs from the number of variables")
        w = wd.eq_weights[j] - sum(a * b for a, b in zip(m, wd.var_weights))
        if w <= 0:
            raise ValueError(f"deformation monomial {m} of equation {j} has non-positive parameter weight")
        pw.append(mpq(w))
    target = mu_plus_muhat(wd) * wd.eq_weights[0]
    sols = []

    def rec(i, left, cur):
        if i == len(pw):
            if left == 0:
                sols.append(tuple(cur))
            return
        n = 0
        while n * pw[i] <= left:
            rec(i + 1, left - n * pw[i], cur + [n])
            n += 1

    rec(0, target, [])
    return MonomialSupportConstraint(tuple(monomials), tuple(pw), target, tuple(sorted(sols, reverse=True)))


def support_violations(det, constraint: MonomialSupportConstraint, param_vars) -> list:
    """Monomials of ``det`` (in ``param_vars``) that break the weight constraint."""
    idx = [det.ring.index(v) for v in param_vars]
    bad = []
    for e in det.terms:
        if any(e[i] for i in range(det.ring.nvars) if i not in idx):
            bad.append(e)
            continue
        if not constraint.admits([e[i] for i in idx]):
            bad.append(e)
    return sorted(bad)
