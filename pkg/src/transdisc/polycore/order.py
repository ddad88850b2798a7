"""Monomial orders as sort keys on exponent tuples.

Every order yields a key function ``key(exp) -> tuple`` such that
``key(a) > key(b)`` iff ``x^a > x^b``.  Variable precedence follows the
ring's variable order (the first variable is the largest).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ring import RingSpec

_KINDS = ("lex", "grevlex", "wgrevlex", "block")


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _make_wgrevlex(weights):
    def key(exp):
        return (sum(w * e for w, e in zip(weights, exp)), tuple(-e for e in reversed(exp)))

    return key


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is one of ``lex``, ``grevlex``, ``wgrevlex`` (graded by the
    ring weights, ties broken reverse lexicographically) or ``block``.  A
    block order ranks the variables in ``block`` above all others (an
    elimination order for them) and uses ``inner`` inside each block.
    """

    kind: str = "grevlex"
    block: tuple[str, ...] = field(default=())
    inner: str = "grevlex"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order {self.kind!r}")
        if self.inner not in ("lex", "grevlex", "wgrevlex"):
            raise ValueError(f"unknown inner order {self.inner!r}")
        object.__setattr__(self, "block", tuple(self.block))
        if self.kind == "block" and not self.block:
            raise ValueError("block order needs a nonempty first block")

    @classmethod
    def elimination(cls, names, inner: str = "grevlex") -> "MonomialOrder":
        return cls("block", tuple(names), inner)

    def degree_compatible(self) -> bool:
        return self.kind in ("grevlex", "wgrevlex")

    def key(self, ring: RingSpec):
        """Return the sort-key function for exponent tuples of ``ring``."""
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        if self.kind == "wgrevlex":
            return _make_wgrevlex(ring.weights)
        first = [ring.index(v) for v in self.block]
        firstset = set(first)
        rest = [i for i in range(ring.nvars) if i not in firstset]
        k1 = self._inner_key([ring.weights[i] for i in first])
        k2 = self._inner_key([ring.weights[i] for i in rest])

        def key(exp):
            return (k1(tuple(exp[i] for i in first)), k2(tuple(exp[i] for i in rest)))

        return key

    def _inner_key(self, weights):
        if self.inner == "lex":
            return tuple
        if self.inner == "grevlex":
            return _grevlex_key
        return _make_wgrevlex(weights)

    def __str__(self):
        if self.kind == "block":
            return f"block({','.join(self.block)};{self.inner})"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")
WGREVLEX = MonomialOrder("wgrevlex")


def parse_order(text: str) -> MonomialOrder:
    text = text.strip().lower()
    if text in ("lex", "grevlex", "wgrevlex"):
        return MonomialOrder(text)
    raise ValueError(f"unknown monomial order {text!r}")
