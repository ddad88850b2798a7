import itertools
import warnings

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from transdisc.polycore import RingSpec, parse_polynomial
from transdisc.presentation import LocalFamily, constant_term_shape, milnor_colength, presentation_determinant
from transdisc.weighted import (
    FormulaSingular, WeightData, disc_monomial_support, milnor_weighted_hypersurface, mu_plus_muhat,
    poincare_series_mu, support_violations,
)


def milnor_orlik(ws, d):
    out = mpq(1)
    for w in ws:
        out *= mpq(d, w) - 1
    return out


GRID = [(ws, d) for k in (1, 2, 3) for ws in itertools.product((1, 2, 3), repeat=k) for d in range(2, 9)]


@pytest.mark.parametrize("ws,d", GRID[:: max(1, len(GRID) // 60)])
def test_r1_three_formulas_agree(ws, d):
    wd = WeightData(ws, (d,))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        expected = milnor_orlik(ws, d)
        assert milnor_weighted_hypersurface(wd) == expected
        assert mu_plus_muhat(wd) == expected
        assert poincare_series_mu(wd) == expected


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(1, 12))
def test_r1_property(ws, d):
    wd = WeightData(tuple(ws), (d,))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert mu_plus_muhat(wd) == poincare_series_mu(wd) == milnor_orlik(ws, d)


def germs(vs, *eqs):
    ring = RingSpec(tuple(vs))
    return [parse_polynomial(e, ring) for e in eqs]


@pytest.mark.parametrize("ws,ds,vs,eqs", [
    ((1, 1, 1), (2, 2), "xyz", ("x^2 + y^2 + z^2", "x^2 + 2*y^2 + 3*z^2")),
    ((1, 1, 1), (2, 3), "xyz", ("x^2 + y^2 + z^2", "x^3 + y^3 + z^3")),
    ((1, 1), (2, 2), "xy", ("x^2 + y^2", "x*y")),
    ((3, 2), (6, 5), "xy", ("x^2 + y^3", "x*y")),
    ((1, 1), (3, 3), "xy", ("x^3 + y^3", "x^2*y - x*y^2")),
])
def test_weighted_icis_against_colength(ws, ds, vs, eqs):
    wd = WeightData(ws, ds)
    hs = germs(vs, *eqs)
    mu = milnor_colength(hs)
    assert poincare_series_mu(wd) == mu
    assert mu_plus_muhat(wd) == mu + milnor_colength(hs[1:])
    assert mu_plus_muhat(wd) == constant_term_shape(hs)[0]


@pytest.mark.parametrize("wd", [WeightData((1, 1, 1), (2, 2)), WeightData((1, 1), (3, 3)),
                                WeightData((1, 2, 3), (6, 6, 6))])
def test_equal_weight_limit_is_perturbation_independent(wd):
    a = mu_plus_muhat(wd)
    assert a == mu_plus_muhat(wd, lambda j: j * j) == mu_plus_muhat(wd, lambda j: 2 * j + 5)


def test_equal_perturbation_is_singular():
    with pytest.raises(FormulaSingular):
        mu_plus_muhat(WeightData((1, 1, 1), (2, 2)), lambda j: 1)


def test_poincare_value_for_full_intersection():
    assert poincare_series_mu(WeightData((1, 1, 1), (2, 2))) == 5
    assert poincare_series_mu(WeightData((1, 1, 1), (2, 3))) == 13


def test_inconsistent_weights_warn():
    with pytest.warns(UserWarning):
        milnor_weighted_hypersurface(WeightData((2, 3), (4,)))


def test_invalid_weight_data():
    with pytest.raises(ValueError):
        WeightData((0, 1), (2,))
    with pytest.raises(ValueError):
        WeightData((1,), (2, 2))


def test_support_cubic_versal():
    wd = WeightData((1, 1), (3,))
    con = disc_monomial_support(wd, [(0, (0, 0)), (0, (1, 0)), (0, (0, 1))])
    assert con.param_weights == (3, 2, 2) and con.target == 12
    assert (4, 0, 0) in con.solutions and (0, 6, 0) in con.solutions
    assert all(con.admits(s) for s in con.solutions)
    assert not con.admits((1, 1, 1))


def test_support_errors():
    wd = WeightData((1, 1), (3,))
    with pytest.raises(ValueError):
        disc_monomial_support(wd, [])
    with pytest.raises(ValueError):
        disc_monomial_support(wd, [(0, (3, 0))])
    with pytest.raises(ValueError):
        disc_monomial_support(wd, [(0, (0,))])


@pytest.mark.parametrize("p", [2, 3, 4])
def test_support_matches_power_family(p):
    con = disc_monomial_support(WeightData((1,), (p,)), [(0, (0,))])
    assert con.solutions == ((p - 1,),)
    ring = RingSpec(("s", "u"))
    lf = LocalFamily(ring, ("s",), ("u",), (parse_polynomial(f"u^{p} + s", ring),), p)
    det = presentation_determinant(lf).determinant
    assert support_violations(det, con, ("s",)) == []


def test_support_matches_cubic_presentation():
    ring = RingSpec(("a", "b", "c", "x", "y"))
    lf = LocalFamily(ring, ("a", "b", "c"), ("x", "y"),
                     (parse_polynomial("x^3 + y^3 + a + b*x + c*y", ring),), 3)
    res = presentation_determinant(lf)
    con = disc_monomial_support(WeightData((1, 1), (3,)), [(0, (0, 0)), (0, (1, 0)), (0, (0, 1))])
    assert res.order == 4
    assert support_violations(res.determinant, con, ("a", "b", "c")) == []
    assert not res.determinant.is_zero()
