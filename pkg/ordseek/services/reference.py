"""Brute-force oracles.

Nothing here calls into the search modules; the only shared primitive is
``arith.mod_pow``. Every oracle refuses inputs above ``ORACLE_CAP`` instead
of sampling.
"""
from __future__ import annotations

import math
from typing import Mapping, Optional

from .. import current_config
from ..errors import OracleCapExceeded, PreconditionError
from .arith import mod_pow


def _check_cap(size: int, what: str) -> None:
    cap = current_config()["ORACLE_CAP"]
    if size > cap:
        raise OracleCapExceeded(f"{what} {size} exceeds the oracle cap of {cap}")


def _require_unit(n: int, a: int) -> None:
    if n < 2:
        raise PreconditionError(f"modulus must be at least 2, got {n}")
    if math.gcd(a, n) != 1:
        raise PreconditionError(f"{a} is a non-unit modulo {n}: gcd {math.gcd(a, n)}")


def naive_order(n: int, a: int) -> int:
    _require_unit(n, a)
    _check_cap(n, "modulus")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def naive_order_exceeds(n: int, a: int, bound: int) -> bool:
    """True when a^k != 1 (mod n) for every 1 <= k <= bound."""
    _require_unit(n, a)
    _check_cap(bound, "order bound")
    x = 1
    for _ in range(bound):
        x = x * a % n
        if x == 1:
            return False
    return True


def _divisors_from_factorization(factors: Mapping[int, int]) -> list[int]:
    divisors = [1]
    for p, e in factors.items():
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    return divisors


def naive_divisors_in_class(
    n: int,
    r: int,
    s: int,
    known_factors: Optional[Mapping[int, int]] = None,
) -> list[int]:
    """All p > 1 with p^r | n and p = 1 (mod s), from enumeration or a supplied factorization."""
    if n < 2 or r < 1 or s < 2:
        raise PreconditionError(f"need N >= 2, r >= 1, s >= 2, got N = {n}, r = {r}, s = {s}")
    if known_factors is not None:
        product = math.prod(p**e for p, e in known_factors.items())
        if product != n:
            raise PreconditionError(f"supplied factorization multiplies to {product}, not {n}")
        divisors = _divisors_from_factorization(known_factors)
    else:
        _check_cap(n, "N")
        divisors = []
        for d in range(1, math.isqrt(n) + 1):
            if n % d == 0:
                divisors.extend({d, n // d})
    return sorted(p for p in set(divisors) if p > 1 and n % p**r == 0 and p % s == 1)


def naive_smallest_prime_factor(n: int, bound: int) -> Optional[int]:
    """Smallest prime p <= bound dividing n, by trial division."""
    if n < 2 or bound < 2:
        raise PreconditionError(f"need N >= 2 and L >= 2, got N = {n}, L = {bound}")
    limit = min(bound, math.isqrt(n))
    _check_cap(limit, "trial division limit")
    for p in range(2, limit + 1):
        if n % p == 0:
            return p
    return n if n <= bound else None


def naive_factorization(n: int) -> list[tuple[int, int]]:
    if n < 2:
        raise PreconditionError(f"cannot factor {n}")
    _check_cap(math.isqrt(n), "trial division limit")
    factors = []
    remaining, p = n, 2
    while p * p <= remaining:
        exponent = 0
        while remaining % p == 0:
            remaining //= p
            exponent += 1
        if exponent:
            factors.append((p, exponent))
        p += 1
    if remaining > 1:
        factors.append((remaining, 1))
    return factors


def window_width(ell: int, factor: Optional[int] = None) -> int:
    """ceil(factor * sqrt(ell)), exactly."""
    factor = current_config()["WINDOW_FACTOR"] if factor is None else factor
    square = factor * factor * ell
    root = math.isqrt(square)
    return root if root * root == square else root + 1


def check_consecutive_claim(n: int, ell: int, window_start: int, width: Optional[int] = None) -> bool:
    """True iff some b in the window starting at window_start has b^ell != 1 (mod n)."""
    if n < 2 or ell < 1 or window_start < 0:
        raise PreconditionError(f"need N >= 2, ell >= 1, start >= 0, got {n}, {ell}, {window_start}")
    width = window_width(ell) if width is None else width
    return any(mod_pow(b, ell, n) != 1 for b in range(window_start, window_start + width))
