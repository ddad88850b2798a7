import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import stable_local_colength

from transdisc.errors import NotFiniteError
from transdisc.polycore import Polynomial, RingSpec, parse_polynomial
from transdisc.polycore.matrix import determinant, jacobian, minors
from transdisc.presentation import (
    LocalFamily, constant_term_shape, fiber_basis, milnor_colength, multiplication_matrices,
    presentation_determinant, tautology_check,
)


def fam(base, fiber, eqs, p=2):
    ring = RingSpec(tuple(base) + tuple(fiber))
    return LocalFamily(ring, tuple(base), tuple(fiber), tuple(parse_polynomial(e, ring) for e in eqs), p)


def germs(vs, *eqs):
    ring = RingSpec(tuple(vs))
    return [parse_polynomial(e, ring) for e in eqs]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_milnor_power(p):
    assert milnor_colength(germs("s", f"s^{p}")) == p - 1


def test_milnor_examples():
    assert milnor_colength(germs("xy", "x^3 + y^3")) == 4
    assert milnor_colength(germs("xyz", "x^2 + y^2 + z^2")) == 1


@pytest.mark.parametrize("vs,eqs", [("xy", ("x^2 + y^3", "y^2 + x^3")), ("xy", ("x*y", "x^2 + y^2")),
                                    ("xyz", ("x^2 + y^2 + z^2", "x*y + z^3"))])
def test_le_greuel_against_macaulay_oracle(vs, eqs):
    hs = germs(vs, *eqs)
    ring = hs[0].ring
    lam = stable_local_colength(hs[1:] + [m for m in minors(jacobian(hs, ring.variables), 2) if not m.is_zero()])
    mu_tail = stable_local_colength([hs[1].diff(v) for v in ring.variables])
    assert milnor_colength(hs) == lam - mu_tail


def test_non_isolated_raises():
    with pytest.raises(NotFiniteError):
        milnor_colength(germs("xy", "x^2"))


@pytest.mark.parametrize("q", [1, 2, 3])
def test_whitney_fiber_basis_and_operator(q):
    lf = fam("z", "s", [f"s^2 - z^{q}"])
    fb = fiber_basis(lf)
    assert fb.monomials == ((0,),) and fb.mu == 1 and fb.mu_hat == 0
    md = multiplication_matrices(lf)
    assert len(md.operator) == 1
    entry = md.operator[0][0]
    assert entry == parse_polynomial(f"-z^{q}", lf.ring)
    assert tautology_check(md)
    res = presentation_determinant(lf)
    assert str(res.determinant) == (f"z^{q}" if q > 1 else "z") and res.order == q


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_fast_dying_chart(p):
    lf = fam("z", "s", [f"s^{p} - z"], p)
    fb = fiber_basis(lf)
    assert fb.monomials == tuple((i,) for i in range(p - 1))
    res = presentation_determinant(lf)
    assert res.order == p - 1


def test_a1_quadric_fiber_basis():
    lf = fam("z", ("u", "v"), ["u^2 + v^2 + z"])
    assert fiber_basis(lf).size == 1


def test_truncated_mode_certificate_and_commuting_operators():
    lf = fam("z", ("u",), ["(1+z)*u^2 + z^2*u + z - z^3"])
    md = multiplication_matrices(lf)
    assert md.mode == "truncated"
    res = presentation_determinant(lf)
    assert res.order == 1 and "unchanged" in res.certificate
    # det is F(u0(z)) with u0 the critical point: z - z^3 - z^4/4 + ... modulo z^5
    assert res.determinant == parse_polynomial("z - z^3 - 1/4*z^4", RingSpec(("z",)))


def test_multiplication_operators_commute():
    lf = fam(("z",), ("u", "v"), ["u^3 + v^3 + z*u*v + z"], 3)
    md = multiplication_matrices(lf)
    A, B = md.matrices["u"], md.matrices["v"]
    n = len(A)

    def mul(X, Y):
        return [[sum((X[i][k] * Y[k][j] for k in range(n)), Polynomial.zero(lf.ring)) for j in range(n)]
                for i in range(n)]

    if md.D is None:
        assert mul(A, B) == mul(B, A)
    assert tautology_check(md)


@given(st.permutations(range(4)))
def test_determinant_invariant_under_basis_permutation(perm):
    lf = fam("z", ("u", "v"), ["u^3 + v^3 + z*u + z^2*v + z"], 3)
    md = multiplication_matrices(lf)
    n = len(md.operator)
    assert n == 4
    M = md.operator
    Mp = [[M[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    trunc = (lf.base_vars, md.D) if md.D is not None else None
    assert determinant(Mp, truncate=trunc) == determinant(M, truncate=trunc)


def test_stability_under_larger_truncation():
    lf = fam("z", ("u",), ["u^3 + z*u + z^2"], 3)
    r1 = presentation_determinant(lf, D=8, allow_exact=False)
    r2 = presentation_determinant(lf, D=12, allow_exact=False)
    assert r1.order == r2.order and r1.lowest_part == r2.lowest_part
    assert r1.determinant == r2.determinant.truncate(("z",), 8)


def test_constant_term_shape_examples():
    assert constant_term_shape(germs("x", "x^2"), verify=True) == {0: 1}
    assert constant_term_shape(germs("s", "s^4"), verify=True) == {0: 3}
    hs = germs("xy", "x^2 + y^3", "y^2 + x^3")
    assert constant_term_shape(hs, verify=True) == {0: 5, 1: 5}
    hs = germs("xy", "x*y", "x^2 + y^3")
    shape = constant_term_shape(hs, verify=True)
    assert shape == {0: milnor_colength(hs) + 2, 1: milnor_colength(hs) + 1}
