import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import to_sympy_expr

from transdisc.errors import NotFiniteError
from transdisc.classical import (
    FamilySetup, binary_form_discriminant, classical_discriminant_eliminate, classical_multiplicity,
    quadric_discriminant,
)
from transdisc.polycore import RingSpec, parse_polynomial


def ratio_is_constant(a, b):
    q = sympy.cancel(sympy.sympify(a) / sympy.sympify(b))
    return q != 0 and q.free_symbols == set()


def sympy_binary_disc(coeffs):
    t = sympy.Symbol("t")
    return sympy.discriminant(sum(c * t ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)), t)


def test_quadric_binary_form():
    fs = FamilySetup.from_strings(("u", "v"), ("a", "b", "c"), "a*u^2 + b*u*v + c*v^2")
    cd = classical_discriminant_eliminate(fs)
    assert str(cd.generator) in ("b^2 - 4*a*c", "-4*a*c + b^2")
    a, b, c = sympy.symbols("a b c")
    expr = to_sympy_expr(cd.generator)[0]
    assert ratio_is_constant(expr, sympy_binary_disc([a, b, c]))


def test_depressed_cubic():
    fs = FamilySetup.from_strings(("u", "v"), ("p", "q"), "u^3 + p*u*v^2 + q*v^3")
    cd = classical_discriminant_eliminate(fs)
    p, q = sympy.symbols("p q")
    assert sympy.expand(to_sympy_expr(cd.generator)[0] - (4 * p ** 3 + 27 * q ** 2)) == 0


def test_degree_one_is_empty():
    fs = FamilySetup.from_strings(("u", "v"), ("a", "b"), "a*u + b*v + u")
    assert classical_discriminant_eliminate(fs).empty


@settings(max_examples=25)
@given(st.integers(2, 5), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_binary_resultant_against_sympy(p, cs):
    cs = cs[: p + 1]
    if cs[0] == 0:
        cs[0] = 1
    ring = RingSpec(("u", "v"))
    F = parse_polynomial(" + ".join(f"({c})*u^{p - i}*v^{i}" for i, c in enumerate(cs)), ring)
    ours = binary_form_discriminant(F, ("u", "v"))
    theirs = sympy_binary_disc(cs)
    # Res(F_u, F_v) = +-p^(p-2) disc(F)
    if theirs == 0:
        assert ours.is_zero()
    else:
        assert ours.is_constant() and not ours.is_zero()
        assert abs(sympy.Rational(str(ours)) / theirs) == sympy.Integer(p) ** (p - 2)


def test_quadric_matrix_discriminant():
    ring = RingSpec(("x", "y", "z", "a"))
    F = parse_polynomial("x^2 + y^2 + a*z^2 + 2*x*y", ring)
    assert quadric_discriminant(F, ("x", "y", "z")).is_zero()
    F = parse_polynomial("x^2 + y^2 + a*z^2", ring)
    assert str(quadric_discriminant(F, ("x", "y", "z"))) == "a"


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_power_germ_multiplicity(p):
    fs = FamilySetup.from_strings(("y",), ("s",), f"y^{p} + s")
    m = classical_multiplicity(fs)
    assert m.value == p - 1 and m.deformed_index == 0 and m.mu == p - 1 and m.mu_hat == 0


def test_a1_fiber_multiplicity():
    fs = FamilySetup.from_strings(("x", "y", "z"), ("s",), "x^2 + y^2 + z^2 + s")
    assert classical_multiplicity(fs).value == 1


@pytest.mark.parametrize("eqs,j,value", [
    (("x^2 + y^3 + s", "y^2 + x^3"), 0, 5),
    (("x*y + s", "x^2 + y^2"), 0, 4),
    (("x*y", "x^2 + y^2 + s"), 1, 4),
])
def test_icis_splitting(eqs, j, value):
    fs = FamilySetup.from_strings(("x", "y"), ("s",), list(eqs))
    m = classical_multiplicity(fs)
    assert m.value == value and m.deformed_index == j and m.mu + m.mu_hat == value


def test_whitney_family_discriminant():
    fs = FamilySetup.from_strings(("y1", "y2"), ("z",), "y1^2*z - y2^2")
    cd = classical_discriminant_eliminate(fs)
    assert str(cd.generator) == "z"
    assert classical_multiplicity(fs, {"z": 0}).value == 1


def test_projective_quadric_multiplicity():
    fs = FamilySetup.from_strings(("u", "v"), ("a", "b", "c"), "a*u^2 + b*u*v + c*v^2")
    assert classical_multiplicity(fs, {"a": 1, "b": 3, "c": 1}).value == 0
    with pytest.raises(NotFiniteError):
        classical_multiplicity(fs, {"a": 1, "b": 2, "c": 1})
    line = FamilySetup.from_strings(("u", "v"), ("t",), "u^2 + 2*u*v + (1 + t)*v^2")
    assert classical_multiplicity(line, {"t": 0}).value == 1
