"""Big-integer and modular-polynomial primitives shared by every other service."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import gmpy2

from .. import current_config
from ..errors import NotInvertible, PreconditionError


NEG_INF = -math.inf


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """return int: base ** exp % modulus"""
    if modulus < 2:
        raise PreconditionError(f"modulus must be at least 2, got {modulus}")
    if exp < 0:
        raise PreconditionError(f"exponent must be nonnegative, got {exp}")
    return int(gmpy2.powmod(base, exp, modulus))


def gcd(a: int, b: int) -> int:
    return int(gmpy2.gcd(a, b))


def lcm(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise PreconditionError(f"lcm is defined here for positive inputs only, got ({a}, {b})")
    return a * b // gcd(a, b)


def mod_inv(a: int, modulus: int) -> int:
    """return int: s' in [1, modulus - 1] with a * s' == 1 mod modulus"""
    if modulus < 2:
        raise PreconditionError(f"modulus must be at least 2, got {modulus}")
    g = gcd(a % modulus, modulus)
    if g != 1:
        raise NotInvertible(a, modulus, g)
    return int(gmpy2.invert(a, modulus))


def iroot(n: int, r: int) -> int:
    """return int: floor(n ** (1 / r)), exact"""
    if r < 1:
        raise PreconditionError(f"root index must be positive, got {r}")
    if n < 0:
        raise PreconditionError(f"cannot take a root of the negative number {n}")
    root, _ = gmpy2.iroot(gmpy2.mpz(n), r)
    return int(root)


def ceil_root(n: int, r: int) -> int:
    """Smallest x with x ** r >= n."""
    root = iroot(n, r)
    return root if root**r >= n else root + 1


@dataclass(frozen=True)
class ModPoly:
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise PreconditionError(f"polynomial modulus must be at least 2, got {self.modulus}")
        if any(c < 0 or c >= self.modulus for c in self.coeffs):
            raise PreconditionError("coefficients must be reduced modulo the modulus")
        if self.coeffs and self.coeffs[-1] == 0:
            raise PreconditionError("leading coefficient must be nonzero; use ModPoly.of")

    @classmethod
    def of(cls, modulus: int, coeffs: Iterable[int]) -> "ModPoly":
        reduced = [c % modulus for c in coeffs]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(modulus, tuple(reduced))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, t: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = (value * t + c) % self.modulus
        return value


def _add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _karatsuba(a: Sequence[int], b: Sequence[int], threshold: int) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= threshold:
        return _schoolbook(a, b)

    half = max(len(a), len(b)) // 2
    a_low, a_high = a[:half], a[half:]
    b_low, b_high = b[:half], b[half:]

    low = _karatsuba(a_low, b_low, threshold)
    high = _karatsuba(a_high, b_high, threshold)
    mid = _sub(_sub(_karatsuba(_add(a_low, a_high), _add(b_low, b_high), threshold), low), high)

    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(low):
        out[i] += c
    for i, c in enumerate(mid):
        if i + half < len(out):
            out[i + half] += c
    for i, c in enumerate(high):
        out[i + 2 * half] += c
    return out


def poly_mul_mod(p: ModPoly, q: ModPoly, threshold: Optional[int] = None) -> ModPoly:
    if p.modulus != q.modulus:
        raise PreconditionError(f"modulus mismatch: {p.modulus} != {q.modulus}")
    if threshold is None:
        threshold = current_config()["KARATSUBA_THRESHOLD"]
    product = _karatsuba(p.coeffs, q.coeffs, max(1, threshold))
    return ModPoly.of(p.modulus, product)


def poly_rem_monic(p: ModPoly, divisor: ModPoly) -> ModPoly:
    """Remainder of p by a monic divisor of the same modulus."""
    if divisor.is_zero or divisor.coeffs[-1] != 1:
        raise PreconditionError("divisor must be monic")
    n = p.modulus
    k = len(divisor.coeffs) - 1
    rem = list(p.coeffs)
    for top in range(len(rem) - 1, k - 1, -1):
        lead = rem[top]
        if lead:
            shift = top - k
            for j, c in enumerate(divisor.coeffs):
                rem[shift + j] = (rem[shift + j] - lead * c) % n
    return ModPoly.of(n, rem[:k])


def subproduct_tree(points: Sequence[int], modulus: int) -> list[list[ModPoly]]:
    """Levels of the subproduct tree: level 0 holds x - t per point, the last level the full product."""
    level = [ModPoly.of(modulus, [-t, 1]) for t in points]
    levels = [level]
    while len(level) > 1:
        paired = [poly_mul_mod(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
        levels.append(level)
    return levels


def multi_eval(p: ModPoly, points: Sequence[int]) -> list[int]:
    """Evaluate p at every point by reducing down the subproduct tree."""
    if not points:
        return []
    if any(t < 0 or t >= p.modulus for t in points):
        raise PreconditionError("evaluation points must be reduced modulo the modulus")

    levels = subproduct_tree(points, p.modulus)
    remainders = [poly_rem_monic(p, levels[-1][0])]
    for depth in range(len(levels) - 2, -1, -1):
        children = levels[depth]
        next_remainders: list[ModPoly] = []
        for index, parent_rem in enumerate(remainders):
            for child in children[2 * index:2 * index + 2]:
                next_remainders.append(poly_rem_monic(parent_rem, child))
        remainders = next_remainders

    # a remainder modulo x - t is the constant p(t)
    return [rem.coeffs[0] if rem.coeffs else 0 for rem in remainders]
