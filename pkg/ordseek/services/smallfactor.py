"""Deterministic Pollard-Strassen search for the smallest prime divisor below a bound."""
from __future__ import annotations

import logging

from ..errors import InvariantError, PreconditionError
from ..models import SmallFactorResult
from .arith import ModPoly, ceil_root, gcd, iroot, multi_eval, subproduct_tree


logger = logging.getLogger(__name__)


def _block_polynomial(n: int, c: int) -> ModPoly:
    """f(x) = (x + 1)(x + 2)...(x + c) mod n, built as a product tree."""
    return subproduct_tree([(-j) % n for j in range(1, c + 1)], n)[-1][0]


def _smallest_divisor_in_block(n: int, start: int, stop: int) -> int:
    for candidate in range(max(start, 2), stop + 1):
        if n % candidate == 0:
            return candidate
    raise InvariantError(f"block [{start}, {stop}] was flagged but holds no divisor of {n}")


def smallest_prime_factor_upto(n: int, bound: int) -> SmallFactorResult:
    if bound < 2 or bound > n:
        raise PreconditionError(f"small-factor bound must satisfy 2 <= L <= N, got L = {bound}, N = {n}")

    c = ceil_root(bound, 2)
    f = _block_polynomial(n, c)
    block_starts = list(range(0, bound, c))
    values = multi_eval(f, [start % n for start in block_starts])

    for start, value in zip(block_starts, values):
        # f(start) = (start + 1)...(start + c); a shared factor flags the block
        if gcd(value, n) == 1:
            continue
        p = _smallest_divisor_in_block(n, start + 1, start + c)
        if p > bound:
            break
        logger.debug("smallest prime factor of %d below %d is %d", n, bound, p)
        return SmallFactorResult(p, bound)

    return SmallFactorResult(None, bound)


def factorize_upto_sqrt(n: int) -> list[tuple[int, int]]:
    """Full factorization with primes ascending, driven by repeated small-factor searches."""
    if n < 2:
        raise PreconditionError(f"cannot factor {n}")

    factors: list[tuple[int, int]] = []
    remaining = n
    while remaining > 1:
        root = iroot(remaining, 2)
        if root < 2:
            p = remaining
        else:
            found = smallest_prime_factor_upto(remaining, root).found
            p = remaining if found is None else found

        exponent = 0
        while remaining % p == 0:
            remaining //= p
            exponent += 1
        factors.append((p, exponent))
    return factors
