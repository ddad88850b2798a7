from __future__ import annotations

import re
from dataclasses import dataclass, field

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RingSpec:
    """Ordered variable names of Q[x_1..x_n] with positive integer weights.

    ``base`` and ``fiber`` optionally record a block partition used by the
    conormal machinery (base coordinates of Z, fiber coordinates y).
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...] = field(default=())
    base: tuple[str, ...] = field(default=())
    fiber: tuple[str, ...] = field(default=())

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names in {vs}")
        for v in vs:
            if not _NAME.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        ws = tuple(int(w) for w in self.weights) if self.weights else (1,) * len(vs)
        if len(ws) != len(vs):
            raise ValueError("weights must match variables")
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "fiber", tuple(self.fiber))
        for name in self.base + self.fiber:
            if name not in vs:
                raise ValueError(f"block variable {name!r} not in ring")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vs)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def extend(self, names, weights=None, fiber=None) -> "RingSpec":
        """Append new variables (which must be fresh) to the ring."""
        names = tuple(names)
        ws = tuple(weights) if weights is not None else (1,) * len(names)
        return RingSpec(
            self.variables + names,
            self.weights + ws,
            base=self.base,
            fiber=self.fiber + (tuple(fiber) if fiber else ()),
        )

    def drop(self, names) -> "RingSpec":
        names = set(names)
        keep = [i for i, v in enumerate(self.variables) if v not in names]
        return RingSpec(
            tuple(self.variables[i] for i in keep),
            tuple(self.weights[i] for i in keep),
            base=tuple(v for v in self.base if v not in names),
            fiber=tuple(v for v in self.fiber if v not in names),
        )

    def with_blocks(self, base=(), fiber=()) -> "RingSpec":
        return RingSpec(self.variables, self.weights, base=tuple(base), fiber=tuple(fiber))

    def fresh(self, prefix: str, count: int = 1, numbered: bool = True, avoid=()) -> tuple[str, ...]:
        """Return ``count`` names not clashing with the ring or ``avoid``.

        Names are ``prefix1..prefixN``; with ``numbered=False`` and a single
        name the bare prefix is used.  Clashes are resolved by prepending
        underscores.
        """
        taken = set(self.variables) | set(avoid)
        while True:
            if numbered:
                names = tuple(f"{prefix}{i}" for i in range(1, count + 1))
            else:
                names = (prefix,) if count == 1 else tuple(f"{prefix}{i}" for i in range(1, count + 1))
            if not taken.intersection(names):
                return names
            prefix = "_" + prefix

    def __repr__(self):
        if any(w != 1 for w in self.weights):
            return f"RingSpec({list(self.variables)}, weights={list(self.weights)})"
        return f"RingSpec({list(self.variables)})"
