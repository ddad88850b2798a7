import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transdisc.errors import ParseError
from transdisc.polycore import (
    GREVLEX, LEX, WGREVLEX, MonomialOrder, NotWeightedHomogeneous, Polynomial, RingSpec, dehomogenize,
    homogenize, parse_polynomial, parse_polynomials, partial_derivative, weighted_degree,
)

R3 = RingSpec(("x", "y", "z"))


def P(s, ring=R3, **params):
    return parse_polynomial(s, ring, params or None)


def test_parse_examples():
    f = P("x^2*z - y^2")
    assert f.terms == {(2, 0, 1): 1, (0, 2, 0): -1}
    assert P("0").is_zero() and P("0").terms == {}
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("3/4*x - x/4") == P("x/2")


@pytest.mark.parametrize("text", ["2x", "x y", "x^-1", "x^y", "x +", "w", "x/(y)", "(x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        P("x + 3*w")
    assert info.value.position == 6


def test_params_bind_exponents():
    assert P("x^p*z - y^p", p=3) == P("x^3*z - y^3")
    assert parse_polynomials("x, y^q", R3, {"q": 2}) == [P("x"), P("y^2")]


def test_serialization_is_grevlex_descending():
    assert str(P("y^2 + 3/4*x^3 + x^2*z - 2*y^2")) == "3/4*x^3 + x^2*z - y^2"


def test_weighted_degree_examples():
    R = RingSpec(("x", "y"))
    assert weighted_degree(P("x^3+y^3", R)) == 3
    Rw = RingSpec(("x", "y", "z"), (3, 1, 3))
    assert weighted_degree(P("x^2 + z*y^3", Rw)) == 6
    r = weighted_degree(P("x^2 + x^3", R))
    assert isinstance(r, NotWeightedHomogeneous)
    assert r.witness == (P("x^2", R), P("x^3", R))
    with pytest.raises(ValueError):
        weighted_degree(P("0", R))


def test_homogenize_examples():
    R = RingSpec(("x", "y", "z"))
    h = homogenize(P("x^2 + z*y^3", R), "w")
    assert h == parse_polynomial("w^2*x^2 + z*y^3", h.ring)
    assert homogenize(P("x*y + z^3", R), "w") == parse_polynomial("w*x*y + z^3", h.ring)
    assert homogenize(P("1", R), "w").is_constant()
    with pytest.raises(ValueError):
        homogenize(P("x", R), "x")


def test_partial_derivative_examples():
    f = P("x^2*z - y^2")
    assert partial_derivative(f, "x") == P("2*x*z")
    assert partial_derivative(f, "y") == P("-2*y")


# property tests -------------------------------------------------------------

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps, coeffs, max_size=4).map(
    lambda d: Polynomial(R3, {e: c for e, c in d.items() if c})
)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == Polynomial.zero(R3)


@given(polys)
def test_parse_serialize_roundtrip(a):
    assert P(str(a)) == a


@given(polys)
def test_homogenize_roundtrip(a):
    h = homogenize(a, "w")
    assert h.is_homogeneous()
    assert dehomogenize(h, "w") == a


def _all_monomials(n, d):
    return [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]


@pytest.mark.parametrize("order", [LEX, GREVLEX, WGREVLEX, MonomialOrder.elimination(["x"]),
                                   MonomialOrder.elimination(["x", "y"])])
def test_order_multiplicative_and_total(order):
    ring = RingSpec(("x", "y", "z"), (1, 2, 3))
    key = order.key(ring)
    mons = _all_monomials(3, 4)
    keys = {m: key(m) for m in mons}
    assert len(set(keys.values())) == len(mons)
    small = _all_monomials(3, 2)
    for a, b in itertools.combinations(mons, 2):
        if keys[a] > keys[b]:
            a, b = b, a
        for c in small:
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            assert key(ac) < key(bc)
    # well-founded on the bounded set: the unit is the minimum
    assert min(mons, key=key) == (0, 0, 0)


def test_elimination_order_ranks_first_block_higher():
    ring = R3
    key = MonomialOrder.elimination(["x"]).key(ring)
    assert all(key((1, 0, 0)) > key(e) for e in _all_monomials(3, 6) if e[0] == 0)


weights = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))


@given(weights, st.integers(2, 8), st.lists(coeffs.filter(bool), min_size=1, max_size=4))
def test_euler_identity(w, d, cs):
    ring = RingSpec(("x", "y", "z"), w)
    mons = [e for e in itertools.product(range(d + 1), repeat=3) if sum(a * b for a, b in zip(e, w)) == d]
    if not mons:
        return
    f = Polynomial(ring, {m: c for m, c in zip(mons, cs)})
    deg = weighted_degree(f)
    assert deg == d
    lhs = sum((Polynomial.var(ring, v) * f.diff(v)).scale(ring.weight(v)) for v in ring.variables)
    assert lhs == f.scale(d)
