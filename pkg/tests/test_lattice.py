import random

import pytest

from ordseek.errors import DegenerateLattice, PreconditionError
from ordseek.services.lattice import (
    IntPoly,
    LatticeBasis,
    determinant,
    first_vector_norm_bound,
    integer_roots,
    is_lll_reduced,
    lll_reduce,
    lll_reduce_tracked,
)


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _random_basis(rng, dim, bits):
    while True:
        rows = [[rng.randrange(-(2**bits), 2**bits) for _ in range(dim)] for _ in range(dim)]
        if determinant(rows) != 0:
            return LatticeBasis.of(rows)


def _assert_certified(basis):
    result = lll_reduce_tracked(basis)
    reduced = result.basis
    assert is_lll_reduced(reduced)
    assert abs(determinant(result.transform)) == 1
    assert _matmul(result.transform, basis.to_lists()) == reduced.to_lists()
    assert abs(determinant(reduced.rows)) == abs(determinant(basis.rows))
    assert first_vector_norm_bound(reduced).passed


def test_textbook_basis():
    basis = LatticeBasis.of([[1, 1, 1], [-1, 0, 2], [3, 5, 6]])
    reduced = lll_reduce(basis)
    assert is_lll_reduced(reduced)
    # the shortest vector has squared norm 1
    assert sum(v * v for v in reduced.rows[0]) <= 2
    _assert_certified(basis)


def test_already_reduced_basis_is_left_alone():
    basis = LatticeBasis.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    result = lll_reduce_tracked(basis)
    assert result.basis == basis
    assert result.swaps == 0


def test_random_bases_are_certified():
    rng = random.Random(3)
    for _ in range(25):
        _assert_certified(_random_basis(rng, rng.randint(2, 8), 64))


@pytest.mark.slow
def test_random_bases_up_to_dimension_25():
    rng = random.Random(4)
    for _ in range(1000):
        _assert_certified(_random_basis(rng, rng.randint(2, 25), 64))


def test_untracked_reduction_matches_tracked():
    rng = random.Random(5)
    for _ in range(10):
        basis = _random_basis(rng, rng.randint(2, 7), 64)
        assert lll_reduce(basis) == lll_reduce_tracked(basis).basis


def test_dependent_rows_are_rejected():
    with pytest.raises(DegenerateLattice):
        lll_reduce(LatticeBasis.of([[1, 2], [2, 4]]))
    with pytest.raises(DegenerateLattice):
        lll_reduce(LatticeBasis.of([[0, 0], [1, 1]]))


def test_basis_must_be_square():
    with pytest.raises(PreconditionError):
        LatticeBasis.of([[1, 2, 3], [4, 5, 6]])


def test_determinant():
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([[143, 0, 0], [88, 2, 0], [7744, 352, 4]]) == 1144


def test_is_lll_reduced_detects_unreduced_input():
    assert not is_lll_reduced(LatticeBasis.of([[1, 0], [7, 1]]))
    assert not is_lll_reduced(LatticeBasis.of([[10, 0], [0, 1]]))
    assert is_lll_reduced(LatticeBasis.of([[1, 0], [0, 10]]))


@pytest.mark.parametrize(
    "coeffs, bound, expected",
    [
        ([15, -32, 3, 2], 10, [-5, 3]),
        ([15, -32, 3, 2], 4, [3]),
        ([4, 0, -3, 1], 5, [-1, 2]),
        ([7], 100, []),
        ([-4, 1], 4, [4]),
        ([4, 1], 4, [-4]),
        ([4, 1], 3, []),
        ([0, 1], 0, [0]),
        ([2, 0, 1], 50, []),
        ([-6, 11, -6, 1], 3, [1, 2, 3]),
    ],
)
def test_integer_roots(coeffs, bound, expected):
    assert integer_roots(IntPoly.of(coeffs), bound) == expected


def test_integer_roots_with_large_coefficients():
    roots = [-(10**12) + 7, 3, 10**15]
    coeffs = [1]
    for root in roots:
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= root * coeffs[i + 1]
    assert integer_roots(IntPoly.of(coeffs), 10**16) == sorted(roots)


def test_int_poly_trims_and_reports_degree():
    assert IntPoly.of([5, 0, 3, 0, 0]).coeffs == (5, 0, 3)
    assert IntPoly.of([5, 0, 3, 0]).degree == 2
    assert IntPoly.of([0, 0]).is_zero


def test_integer_roots_rejects_bad_input():
    with pytest.raises(PreconditionError):
        integer_roots(IntPoly.of([0, 0]), 5)
    with pytest.raises(PreconditionError):
        integer_roots(IntPoly.of([1, 1]), -1)
