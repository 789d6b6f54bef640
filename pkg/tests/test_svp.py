import itertools
import random
from fractions import Fraction

import pytest

from latpack.errors import CapacityError, ParameterError
from latpack.exactnum import IntMatrix, gram_det
from latpack.craig import CraigParams, craig_basis
from latpack.svp import lll_reduce, shortest_vector, verify_min_norm


def random_unimodular(n, rng, steps=12):
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix(rows)


def scramble(basis: IntMatrix, rng) -> IntMatrix:
    return random_unimodular(basis.rows, rng).matmul(basis)


def brute_force_min(basis: IntMatrix) -> int:
    """Naive box search over the LLL-reduced basis (independent of the DFS path).

    Box sizes come from the GSO norms (coefficients of a vector no longer
    than the shortest reduced row are small in the reduced frame), padded by
    one and capped so the product stays enumerable.
    """
    red = lll_reduce(basis)
    rows = red.basis.m
    bound = min(sum(x * x for x in row) for row in rows)
    boxes = []
    for b in red.gso_norms:
        c = 1
        while c * c * b <= bound:
            c += 1
        boxes.append(min(c + 1, 4))
    best = None
    for coeffs in itertools.product(*[range(-c, c + 1) for c in boxes]):
        if not any(coeffs):
            continue
        vec = [0] * red.basis.cols
        for c, row in zip(coeffs, rows):
            if c:
                vec = [a + c * b for a, b in zip(vec, row)]
        norm = sum(x * x for x in vec)
        if best is None or norm < best:
            best = norm
    return best


def test_lll_identity_unchanged():
    I4 = IntMatrix.identity(4)
    red = lll_reduce(I4)
    assert red.basis == I4


def test_lll_preserves_gram_det():
    rng = random.Random(2)
    for p in [CraigParams(6, 2, 7), CraigParams(8, 3, 11), CraigParams(5, 2, 7)]:
        L = craig_basis(p)
        scr = scramble(L.basis, rng)
        red = lll_reduce(scr)
        assert gram_det(red.basis) == L.vol_sq
    red = lll_reduce(craig_basis(CraigParams(6, 2, 7)))
    assert gram_det(red.basis) == 343  # 7^2 * 7


def test_lll_lovasz_condition_holds():
    # after size reduction |mu| <= 1/2, so B_i >= (quality - 1/4) B_{i-1}
    rng = random.Random(9)
    checked = 0
    q = Fraction(3, 4)
    while checked < 5:
        M = IntMatrix([[rng.randrange(-8, 9) for _ in range(5)] for _ in range(4)])
        try:
            red = lll_reduce(M, q)
        except Exception:
            continue
        b = red.gso_norms
        for i in range(1, len(b)):
            assert b[i] > 0
            assert b[i] >= (q - Fraction(1, 4)) * b[i - 1]
        checked += 1


def test_lll_a2_scrambled_finds_min():
    rng = random.Random(4)
    basis = craig_basis(CraigParams(2, 1, 3)).basis
    for _ in range(10):
        red = lll_reduce(scramble(basis, rng))
        norms = [sum(x * x for x in row) for row in red.basis.m]
        assert min(norms) == 2


def test_lll_quality_validation():
    with pytest.raises(ParameterError):
        lll_reduce(IntMatrix.identity(2), Fraction(1, 4))
    with pytest.raises(ParameterError):
        lll_reduce(IntMatrix.identity(2), Fraction(3, 2))


def test_shortest_vector_examples():
    assert shortest_vector(IntMatrix.identity(3))[0] == 1
    assert shortest_vector(craig_basis(CraigParams(2, 1, 3)))[0] == 2
    norm, witness = shortest_vector(craig_basis(CraigParams(6, 2, 7)))
    assert norm == 4
    assert sum(x * x for x in witness) == 4


def test_shortest_vector_witness_consistency():
    lat = craig_basis(CraigParams(8, 2, 11))
    norm, witness = shortest_vector(lat)
    assert sum(x * x for x in witness) == norm
    # witness is a member: integer combination of basis rows
    from latpack.exactnum import solve_left

    assert solve_left(lat.basis, witness) is not None


def test_shortest_vector_matches_brute_force():
    for p in [CraigParams(4, 2, 5), CraigParams(5, 2, 7), CraigParams(6, 3, 7),
              CraigParams(7, 3, 11), CraigParams(8, 4, 11)]:
        lat = craig_basis(p)
        got, _ = shortest_vector(lat)
        assert got == brute_force_min(lat.basis)


def test_enumeration_invariant_under_scrambling():
    rng = random.Random(31)
    lat = craig_basis(CraigParams(7, 3, 11))
    want, _ = shortest_vector(lat)
    for _ in range(20):
        scr = scramble(lat.basis, rng)
        got, _ = shortest_vector(scr)
        assert got == want


def test_rank_cap():
    with pytest.raises(CapacityError):
        shortest_vector(IntMatrix.identity(41))


def test_verify_min_norm():
    cert = verify_min_norm(craig_basis(CraigParams(10, 3, 11)), 6)
    assert cert.holds and cert.norm >= 6 and cert.witness is None
    cert = verify_min_norm(IntMatrix.identity(3), 2)
    assert not cert.holds
    assert sorted(abs(x) for x in cert.witness) == [0, 0, 1]
