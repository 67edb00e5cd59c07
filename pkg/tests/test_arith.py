import math
import random

import pytest

from ordseek.errors import NotInvertible, PreconditionError
from ordseek.services.arith import (
    ModPoly,
    ceil_root,
    gcd,
    iroot,
    lcm,
    mod_inv,
    mod_pow,
    multi_eval,
    poly_mul_mod,
    poly_rem_monic,
    subproduct_tree,
)


def test_mod_pow():
    assert mod_pow(3, 4, 7) == 4
    assert mod_pow(2, 10, 1000) == 24
    assert mod_pow(5, 0, 13) == 1
    assert isinstance(mod_pow(2, 100, 10**9 + 7), int)


def test_mod_pow_rejects_bad_arguments():
    with pytest.raises(PreconditionError):
        mod_pow(2, 3, 1)
    with pytest.raises(PreconditionError):
        mod_pow(2, -1, 7)


def test_gcd_and_lcm():
    assert gcd(91, 26) == 13
    assert gcd(0, 12) == 12
    assert lcm(4, 6) == 12
    assert lcm(1, 11) == 11
    with pytest.raises(PreconditionError):
        lcm(0, 3)


def test_mod_inv():
    assert mod_inv(5, 143) == 86
    assert 5 * mod_inv(5, 143) % 143 == 1
    assert mod_inv(3, 7) == 5


def test_mod_inv_reports_gcd():
    with pytest.raises(NotInvertible) as excinfo:
        mod_inv(2, 6)
    assert excinfo.value.gcd == 2


def test_iroot_and_ceil_root():
    assert iroot(10**20 + 1, 2) == 10**10
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    assert ceil_root(27, 3) == 3
    assert ceil_root(28, 3) == 4
    assert ceil_root(1, 6) == 1
    assert ceil_root(143, 6) == 3
    big = 2**521 - 1
    assert iroot(big, 5) ** 5 <= big < (iroot(big, 5) + 1) ** 5


def test_mod_poly_normalizes():
    p = ModPoly.of(7, [8, 0, 14])
    assert p.coeffs == (1,)
    assert p.degree == 0
    assert ModPoly.of(7, [7, 14]).is_zero
    assert ModPoly.of(7, []).degree == -math.inf
    with pytest.raises(PreconditionError):
        ModPoly(7, (1, 0))


def test_poly_mul_mod_small():
    p = ModPoly.of(7, [1, 1])
    q = ModPoly.of(7, [2, 1])
    assert poly_mul_mod(p, q).coeffs == (2, 3, 1)


def test_karatsuba_matches_schoolbook():
    rng = random.Random(7)
    modulus = 10007
    for _ in range(40):
        a = ModPoly.of(modulus, [rng.randrange(modulus) for _ in range(rng.randint(1, 45))])
        b = ModPoly.of(modulus, [rng.randrange(modulus) for _ in range(rng.randint(1, 45))])
        assert poly_mul_mod(a, b, threshold=1) == poly_mul_mod(a, b, threshold=1000)


def test_poly_mul_mod_rejects_mixed_moduli():
    with pytest.raises(PreconditionError):
        poly_mul_mod(ModPoly.of(7, [1]), ModPoly.of(11, [1]))


def test_poly_rem_monic():
    p = ModPoly.of(7, [2, 0, 0, 1])
    assert poly_rem_monic(p, ModPoly.of(7, [-1, 1])).coeffs == (3,)
    with pytest.raises(PreconditionError):
        poly_rem_monic(p, ModPoly.of(7, [1, 2]))


def test_subproduct_tree_root_is_full_product():
    points = [1, 4, 5, 9, 12]
    levels = subproduct_tree(points, 13)
    top = levels[-1][0]
    assert top.degree == len(points)
    assert all(top.evaluate(t) == 0 for t in points)
    assert top.evaluate(2) != 0


def test_multi_eval_matches_direct_evaluation():
    rng = random.Random(11)
    for modulus in (2, 97, 2**61 - 1, 10**12 + 39):
        p = ModPoly.of(modulus, [rng.randrange(modulus) for _ in range(30)])
        points = [rng.randrange(modulus) for _ in range(17)]
        assert multi_eval(p, points) == [p.evaluate(t) for t in points]


def test_multi_eval_edge_cases():
    p = ModPoly.of(11, [3, 1])
    assert multi_eval(p, []) == []
    assert multi_eval(ModPoly.of(11, []), [1, 2]) == [0, 0]
    with pytest.raises(PreconditionError):
        multi_eval(p, [11])
