import pytest

from transdisc.classical import binary_form_discriminant
from transdisc.errors import HypothesisError
from transdisc.filtration import PairSetup, conormal_data
from transdisc.fixtures import a1_family_check
from transdisc.groebner import Ideal
from transdisc.polycore import parse_polynomial
from transdisc.presentation import presentation_at_point
from transdisc.transversal import (
    crit_ideal, db_multiplicity_at_point, db_report, family_db_degrees, generically_ordinary_check,
    order_at, pullback_check, truncation_invariance_check,
)


def setup(vs, z, x):
    return PairSetup.from_strings(vs, z, x)


FIXTURES = [
    ("x^2*z - y^2", {0: 1}),
    ("x^2*z^2 - y^2 - x^3", {0: 2}),
    ("x^2*z^3 - y^2 - x^3", {0: 3}),
    ("x^3*z - y^3 - x^4", {0: 2}),
    ("x^4*z - y^4 - x^5", {0: 3}),
    ("x^4 + x^2*y^2*z^2 + y^4*z", {0: 3}),
    ("x^4 + x^2*y^2*z + y^4*z^2", {0: 6}),
    ("x^4 + x^2*y^2*z + y^4*z^3", {0: 7, "1/4": 2}),
    ("x^2*(z^2 - 1) - y^2 - x^3", {-1: 1, 1: 1}),
]


@pytest.mark.parametrize("x, mults", FIXTURES)
def test_db_multiplicities(x, mults):
    rep = db_report(setup("xyz", ["x", "y"], [x]))
    got = {str(k[0]): v for k, v in rep.multiplicity_map().items()}
    assert got == {str(k): v for k, v in mults.items()}


@pytest.mark.parametrize("x, mults", FIXTURES)
def test_consistency_triangle(x, mults):
    """Colength, presentation determinant order and the discriminant of the leading form agree."""
    cd = conormal_data(setup("xyz", ["x", "y"], [x]))
    disc = binary_form_discriminant(cd.leading_forms[0], cd.fiber_vars).in_ring(cd.base_ring)
    for z0 in mults:
        pt = {"z": parse_polynomial(str(z0), cd.base_ring).constant_value()}
        col = db_multiplicity_at_point(cd, pt).value
        pres = presentation_at_point(cd, pt)
        assert col == pres.order == order_at(disc, pt) == mults[z0]


@pytest.mark.parametrize("x", [f[0] for f in FIXTURES])
def test_chart_independence(x):
    """Swapping the generators of I_Z (so the charts and their precedence) keeps Db."""
    a = db_report(setup("xyz", ["x", "y"], [x]), with_presentation=False)
    b = db_report(setup("xyz", ["y", "x"], [x]), with_presentation=False)
    assert a.multiplicity_map() == b.multiplicity_map()
    assert a.total_degree == b.total_degree


@pytest.mark.parametrize("p,q,r", [(2, 3, 4), (3, 4, 5), (2, 5, 3)])
def test_tangent_cone_family_uses_pullback(p, q, r):
    rep = db_report(setup("xyz", ["x", "y"], [f"z*(x^{p}+y^{p}) - x^{q} - y^{r}"]))
    assert rep.multiplicity_map() == {(0,): 2 * (p - 1)}
    assert rep.points[0].method == "pullback"


def test_tangent_cone_deformation_splits():
    rep = db_report(setup("xyz", ["x", "y"], ["z*x^3 + (z-1)*y^3 - x^4 - y^5"]))
    assert rep.multiplicity_map() == {(0,): 2, (1,): 2}


def test_non_smooth_z_empty():
    rep = db_report(setup("xyz", ["x*y", "z"], ["(x*y)^2 - z^2"]))
    assert rep.empty


def test_generically_ordinary():
    cd = conormal_data(setup("xyzw", ["x", "y"], ["x^2*z + y^2*w + x^4 + y^4"]))
    assert generically_ordinary_check(cd).ordinary
    cd = conormal_data(setup("xyz", ["x", "y"], ["x^3*z + y^4"]))
    assert not generically_ordinary_check(cd).ordinary
    with pytest.raises(HypothesisError) as e:
        db_report(setup("xyz", ["x", "y"], ["x^3*z + y^4"]))
    assert e.value.hypothesis == "generically ordinary"


def test_crit_saturation_removes_zero_section():
    cd = conormal_data(setup("xyz", ["x", "y"], ["x^2*z - y^2"]))
    crit = crit_ideal(cd)
    assert not crit.ideal.is_unit()
    assert crit.ideal.contains(parse_polynomial("z", cd.ring))


def test_pullback_property():
    s = setup("xyz", ["x", "y"], ["x^2*z - y^2"])
    for q in (2, 3):
        cert = pullback_check({"z": parse_polynomial(f"z^{q}", s.ring)}, s)
        assert cert.holds and str(cert.direct) == f"z^{q}"
    with pytest.raises(HypothesisError) as e:
        pullback_check({"x": parse_polynomial("x^2", s.ring)}, s)
    assert e.value.hypothesis == "reduced pullback"


def test_non_flat_family():
    fd = family_db_degrees(setup("xyzt", ["x", "y"], ["x^3 + y^3 + t*(x^2 + z*y^2)"]), "t", [0, 1, 2])
    assert fd.degrees == (0, 1, 1)
    assert not fd.constant and not fd.flat


def test_flat_family_whitney_split():
    fd = family_db_degrees(setup("xyzt", ["x", "y"], ["x^2*(z^2 - t) - y^2 - x^3"]), "t", [1, 4, -1])
    assert fd.degrees == (2, 2, 2) and fd.constant


@pytest.mark.parametrize("x", ["x^3*z - y^3 - x^4", "x^2*z^2 - y^2"])
def test_truncation_invariance(x):
    for seed in (0, 1, 2):
        cert = truncation_invariance_check(setup("xyz", ["x", "y"], [x]), seed=seed)
        assert cert.precondition and cert.holds


def test_truncation_precondition_reported():
    s = setup("xyz", ["x", "y"], ["x^2*z - y^2"])
    cert = truncation_invariance_check(s, perturbations=[parse_polynomial("x^2", s.ring)])
    assert not cert.precondition and cert.holds is None


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_a1_transversal_type(k, seed):
    out = a1_family_check(k, seed)
    assert out["holds"], out


def test_dimension_two_base_multiplicity_along_curve():
    s = setup("xyzw", ["x", "y"], ["x^2*z + y^2*w + x^4 + y^4"])
    cd = conormal_data(s)
    # at a generic point of {z = 0} the transversal type is A1 along a curve
    pm = db_multiplicity_at_point(cd, {"z": 0, "w": 1})
    assert pm.value == 1
    assert Ideal([parse_polynomial("z*w", cd.base_ring)], cd.base_ring).equals(
        generically_ordinary_check(cd).support)
