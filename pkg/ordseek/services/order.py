"""Bounded multiplicative order by baby-step giant-step."""
from __future__ import annotations

import bisect
import logging

from ..errors import InvariantError, NotAUnit, PreconditionError
from ..models import OrderResult
from .arith import ceil_root, gcd, mod_inv, mod_pow


logger = logging.getLogger(__name__)


def order_upto(n: int, a: int, bound: int) -> OrderResult:
    """Return ord_n(a) exactly when it is at most ``bound``, else GreaterThan(bound)."""
    if n < 2:
        raise PreconditionError(f"modulus must be at least 2, got {n}")
    if not 1 <= a < n:
        raise PreconditionError(f"element must lie in [1, N - 1], got {a}")
    g = gcd(a, n)
    if g != 1:
        raise NotAUnit(a, n, g)
    if bound < 1:
        raise PreconditionError(f"order bound must be positive, got D = {bound}")

    c = ceil_root(bound, 2)

    baby: list[tuple[int, int]] = []
    power = 1
    for j in range(c):
        baby.append((power, j))
        power = power * a % n
    baby.sort()

    giant_step = mod_pow(mod_inv(a, n), c, n)
    best = None
    giant = 1
    for i in range(c + 1):
        # collect every j with a^j == a^{-ic}; each gives a^{ic + j} == 1
        index = bisect.bisect_left(baby, (giant, -1))
        while index < len(baby) and baby[index][0] == giant:
            k = i * c + baby[index][1]
            if 0 < k <= bound and (best is None or k < best):
                best = k
            index += 1
        giant = giant * giant_step % n

    if best is None:
        return OrderResult.greater_than(bound)
    if mod_pow(a, best, n) != 1:
        raise InvariantError(f"collision exponent {best} does not annihilate {a} modulo {n}")
    logger.debug("ord_%d(%d) = %d", n, a, best)
    return OrderResult.exact(best)
