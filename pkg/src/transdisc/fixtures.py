"""Random fixture generators shared by the corpus and the tests."""
from __future__ import annotations

import random

from .filtration import PairSetup, conormal_data
from .groebner import Ideal
from .polycore import Polynomial, RingSpec
from .polycore.matrix import determinant


def random_a1_matrix(k: int, seed: int, ring: RingSpec, z: str = "z"):
    """Symmetric ``a_ij(z)`` of degree <= 2 whose value at 0 has corank exactly 1."""
    rng = random.Random(seed)
    zv = Polynomial.var(ring, z)
    while True:
        P = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(k)] for i in range(k)]
        d0 = [1] * (k - 1) + [0]
        A0 = [[sum(P[m][i] * d0[m] * P[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
        A = [[Polynomial.constant(ring, A0[i][j]) for j in range(k)] for i in range(k)]
        for deg in (1, 2):
            for i in range(k):
                for j in range(i, k):
                    c = rng.randint(-3, 3)
                    A[i][j] = A[i][j] + zv ** deg * c
                    if i != j:
                        A[j][i] = A[j][i] + zv ** deg * c
        det = determinant(A)
        if not det.is_zero() and det.constant_term() == 0:
            return A, det


def a1_setup(k: int, seed: int):
    xs = tuple(f"x{i + 1}" for i in range(k))
    ring = RingSpec(xs + ("z",))
    A, det = random_a1_matrix(k, seed, ring)
    X = Polynomial.zero(ring)
    for i in range(k):
        for j in range(k):
            X = X + A[i][j] * Polynomial.var(ring, xs[i]) * Polynomial.var(ring, xs[j])
    setup = PairSetup(ring, Ideal([Polynomial.var(ring, x) for x in xs], ring), Ideal([X], ring),
                      name=f"A1 k={k} seed={seed}")
    return setup, A, det


def a1_family_check(k: int, seed: int) -> dict:
    """Presentation determinant versus ``det(a_ij)`` (and the binary discriminant for k = 2)."""
    from .presentation import presentation_at_point
    from .transversal import db_multiplicity_at_point

    setup, A, det = a1_setup(k, seed)
    cd = conormal_data(setup)
    base = cd.base_ring
    det_b = cd.to_base(det)
    pres = presentation_at_point(cd, {"z": 0})
    order_det = det_b.order_in(("z",))
    colength = db_multiplicity_at_point(cd, {"z": 0}).value
    out = {"det_order": order_det, "presentation_order": pres.order, "colength": colength}
    holds = order_det == pres.order == colength
    if k == 2:
        from .classical import binary_form_discriminant

        disc = binary_form_discriminant(cd.leading_forms[0], cd.fiber_vars).in_ring(base)
        same = Ideal([disc], base).equals(Ideal([det_b], base))
        out["binary_discriminant_matches"] = same
        holds = holds and same
    out["holds"] = holds
    return out
