"""Low-level Buchberger engine on ``{exponent: coefficient}`` dicts.

Pairs are chosen by the normal strategy (smallest lcm degree, then the
smaller lcm in the monomial order, then the pair indices) and pruned with
the Gebauer-Moeller installation of Buchberger's product and chain
criteria.  With ``track=True`` every basis element carries cofactors
expressing it in terms of the input generators.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import BudgetExhausted

_ONE = mpq(1)


@dataclass(frozen=True)
class Budget:
    """Caps on processed S-pairs and on the degree of new basis elements."""

    max_pairs: int = 100_000
    max_degree: int = 400


DEFAULT_BUDGET = Budget()
_ACTIVE = [DEFAULT_BUDGET]


def current_budget() -> Budget:
    return _ACTIVE[-1]


@contextmanager
def budget_scope(budget: Budget):
    """Make ``budget`` the default for every computation inside the block."""
    _ACTIVE.append(budget)
    try:
        yield budget
    finally:
        _ACTIVE.pop()


def divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _axpy(target: dict, poly: dict, shift, coeff):
    """target -= coeff * x^shift * poly (in place)."""
    for e, c in poly.items():
        ne = tuple(a + b for a, b in zip(e, shift))
        v = target.get(ne)
        if v is None:
            target[ne] = -coeff * c
        else:
            v = v - coeff * c
            if v:
                target[ne] = v
            else:
                del target[ne]


def _shifted(poly: dict, shift, coeff) -> dict:
    return {tuple(a + b for a, b in zip(e, shift)): coeff * c for e, c in poly.items()}


class Reducer:
    """Multivariate division against a fixed list of monic polynomials."""

    def __init__(self, key):
        cache = {}

        def k(e):
            v = cache.get(e)
            if v is None:
                v = key(e)
                cache[e] = v
            return v

        self.k = k

    def lead(self, p: dict):
        return max(p, key=self.k)

    def reduce(self, p: dict, polys, leads, active, quotients: bool = False, cofs=None, pcof=None):
        """Fully reduce ``p`` by ``polys[i]`` for ``i in active``.

        Returns ``(remainder, quotient_dict, remainder_cofactors)``; the
        quotient dict maps basis index to a polynomial dict and is only
        filled when ``quotients`` is true.  ``cofs``/``pcof`` propagate
        generator cofactors when tracking.
        """
        f = dict(p)
        rem = {}
        quot = {} if quotients else None
        rcof = [dict(c) for c in pcof] if pcof is not None else None
        k = self.k
        act = [(leads[i], i) for i in active]
        while f:
            m = max(f, key=k)
            c = f[m]
            for lg, i in act:
                if divides(lg, m):
                    shift = tuple(a - b for a, b in zip(m, lg))
                    _axpy(f, polys[i], shift, c)
                    if quot is not None:
                        q = quot.setdefault(i, {})
                        v = q.get(shift, 0) + c
                        if v:
                            q[shift] = v
                        else:
                            q.pop(shift, None)
                    if rcof is not None:
                        for gi, gc in enumerate(cofs[i]):
                            if gc:
                                _axpy(rcof[gi], gc, shift, c)
                    break
            else:
                rem[m] = c
                del f[m]
        return rem, quot, rcof


def buchberger(polys, key, nvars: int, budget: Budget | None = None, track: bool = False):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Returns a list of ``(poly_dict, cofactors)`` sorted by decreasing
    leading monomial; ``cofactors`` is ``None`` unless tracking, in which
    case it is a list (one dict per input generator) with
    ``element = sum cofactor_i * input_i``.
    """
    budget = budget or current_budget()
    red = Reducer(key)
    k = red.k
    ngens = len(polys)
    one = (0,) * nvars
    basis: list[dict] = []
    leads: list = []
    cofs: list = []
    G: list[int] = []
    B: list = []
    stats = {"pairs": 0}

    def unit_cof(i):
        return [({one: _ONE} if j == i else {}) for j in range(ngens)]

    def add(r: dict, rc):
        lm = red.lead(r)
        if sum(lm) > budget.max_degree:
            raise BudgetExhausted(
                f"basis element of degree {sum(lm)} exceeds degree budget {budget.max_degree}",
                stats["pairs"],
                sum(lm),
            )
        lc = r[lm]
        if lc != 1:
            inv = 1 / lc
            r = {e: c * inv for e, c in r.items()}
            if rc is not None:
                rc = [{e: c * inv for e, c in g.items()} for g in rc]
        h = len(basis)
        basis.append(r)
        leads.append(lm)
        cofs.append(rc)
        _update(h)

    def _update(h):
        nonlocal G, B
        lh = leads[h]
        new = [(g, lcm_exp(lh, leads[g])) for g in G]
        D = []
        for idx, (g, L) in enumerate(new):
            if coprime(lh, leads[g]):
                D.append((g, L))
                continue
            dominated = False
            for _, L2 in new[idx + 1:]:
                if divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                for _, L2 in D:
                    if divides(L2, L):
                        dominated = True
                        break
            if not dominated:
                D.append((g, L))
        E = [(g, L) for g, L in D if not coprime(lh, leads[g])]
        keep = []
        for a, b, L in B:
            if divides(lh, L) and lcm_exp(leads[a], lh) != L and lcm_exp(leads[b], lh) != L:
                continue
            keep.append((a, b, L))
        B = keep + [(g, h, L) for g, L in E]
        G = [g for g in G if not divides(lh, leads[g])] + [h]

    inputs = []
    for i, p in enumerate(polys):
        if p:
            inputs.append((k(red.lead(p)), i, p))
    inputs.sort(key=lambda t: (t[0], t[1]))
    for _, i, p in inputs:
        r, _, rc = red.reduce(p, basis, leads, G, cofs=cofs, pcof=unit_cof(i) if track else None)
        if r:
            if one in r and len(r) == 1 and not track:
                return [({one: _ONE}, None)]
            add(r, rc)

    while B:
        best = None
        bi = 0
        for idx, (a, b, L) in enumerate(B):
            cand = (sum(L), k(L), a, b)
            if best is None or cand < best:
                best, bi = cand, idx
        a, b, L = B.pop(bi)
        stats["pairs"] += 1
        if stats["pairs"] > budget.max_pairs:
            raise BudgetExhausted(
                f"S-pair budget {budget.max_pairs} exhausted", stats["pairs"], sum(L)
            )
        sa = tuple(x - y for x, y in zip(L, leads[a]))
        sb = tuple(x - y for x, y in zip(L, leads[b]))
        s = _shifted(basis[a], sa, 1)
        _axpy(s, basis[b], sb, 1)
        sc = None
        if track:
            sc = [_shifted(c, sa, 1) if c else {} for c in cofs[a]]
            for gi, gc in enumerate(cofs[b]):
                if gc:
                    _axpy(sc[gi], gc, sb, 1)
        if not s:
            continue
        r, _, rc = red.reduce(s, basis, leads, G, cofs=cofs, pcof=sc)
        if r:
            if one in r and len(r) == 1 and not track:
                return [({one: _ONE}, None)]
            add(r, rc)

    # interreduce the (already minimal) basis
    final = []
    order = sorted(G, key=lambda i: k(leads[i]), reverse=True)
    for i in order:
        others = [j for j in order if j != i]
        lm = leads[i]
        tail = dict(basis[i])
        del tail[lm]
        tcof = None
        if track:
            tcof = [dict(c) for c in cofs[i]]
        r, _, rc = red.reduce(tail, basis, leads, others, cofs=cofs, pcof=None)
        if track:
            # element = lm + tail ; tail reduced: tail = r + sum q*g, so element
            # cofactors are cof_i minus the reduction multiples
            _, quot, _ = red.reduce(tail, basis, leads, others, quotients=True)
            for j, q in quot.items():
                for gi, gc in enumerate(cofs[j]):
                    if gc:
                        for sh, qc in q.items():
                            _axpy(tcof[gi], gc, sh, qc)
        r[lm] = _ONE
        final.append((r, tcof))
    return final
