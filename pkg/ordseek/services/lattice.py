"""Exact-integer LLL reduction and integer root extraction.

The reduction keeps Gram-Schmidt data in integral form: ``d[i]`` is the Gram
determinant of the first ``i`` rows and ``lam[k][j] = d[j] * mu[k][j]``. Every
update divides exactly, so no rational or floating value is ever formed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from sympy import Poly, Symbol

from ..errors import DegenerateLattice, InvariantError, PreconditionError
from .constants import LLL_DELTA


logger = logging.getLogger(__name__)

_X = Symbol("x")


@dataclass(frozen=True)
class LatticeBasis:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise PreconditionError("a lattice basis needs at least one row")
        if any(len(row) != len(self.rows) for row in self.rows):
            raise PreconditionError("lattice basis must be square")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "LatticeBasis":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntPoly":
        trimmed = [int(c) for c in coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        return cls(tuple(trimmed))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value


@dataclass(frozen=True)
class LLLResult:
    basis: LatticeBasis
    transform: tuple[tuple[int, ...], ...]
    swaps: int


@dataclass(frozen=True)
class NormBoundWitness:
    passed: bool
    norm_power: int
    bound: int


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _round_div(num, den):
    # nearest integer to num / den for den > 0
    return (2 * num + den) // (2 * den)


def _reduce_integral(basis: LatticeBasis, with_transform: bool) -> LLLResult:
    n = basis.dim
    delta_num, delta_den = LLL_DELTA.numerator, LLL_DELTA.denominator

    # 1-indexed working copies
    b = [None] + [[gmpy2.mpz(v) for v in row] for row in basis.rows]
    h = [None] + [[gmpy2.mpz(int(i == j)) for j in range(n)] for i in range(n)] if with_transform else None
    d = [gmpy2.mpz(1)] + [gmpy2.mpz(0)] * n
    lam = [[gmpy2.mpz(0)] * (n + 1) for _ in range(n + 1)]

    d[1] = _dot(b[1], b[1])
    if d[1] == 0:
        raise DegenerateLattice("basis row 0 is the zero vector")

    def reduce(k: int, l: int) -> None:
        lam_k, lam_l, d_l = lam[k], lam[l], d[l]
        if 2 * abs(lam_k[l]) <= d_l:
            return
        q = _round_div(lam_k[l], d_l)
        b_l = b[l]
        b[k] = [x - q * y for x, y in zip(b[k], b_l)]
        if h is not None:
            h[k] = [x - q * y for x, y in zip(h[k], h[l])]
        lam_k[l] -= q * d_l
        for i in range(1, l):
            lam_k[i] -= q * lam_l[i]

    def swap(k: int, k_max: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        if h is not None:
            h[k], h[k - 1] = h[k - 1], h[k]
        lam_k, lam_prev = lam[k], lam[k - 1]
        for j in range(1, k - 1):
            lam_k[j], lam_prev[j] = lam_prev[j], lam_k[j]
        mu = lam_k[k - 1]
        d_k, d_prev = d[k], d[k - 1]
        big_b = (d[k - 2] * d_k + mu * mu) // d_prev
        # only rows already brought in (up to k_max) carry lambda entries
        for i in range(k + 1, k_max + 1):
            lam_i = lam[i]
            t = lam_i[k]
            lam_i[k] = (d_k * lam_i[k - 1] - mu * t) // d_prev
            lam_i[k - 1] = (big_b * t + mu * lam_i[k]) // d_k
        d[k - 1] = big_b

    k, k_max, swaps = 2, 1, 0
    while k <= n:
        if k > k_max:
            k_max = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DegenerateLattice(f"basis row {k - 1} depends on the rows before it")
                    d[k] = u

        reduce(k, k - 1)
        mu = lam[k][k - 1]
        if delta_den * d[k] * d[k - 2] < delta_num * d[k - 1] * d[k - 1] - delta_den * mu * mu:
            swap(k, k_max)
            swaps += 1
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                reduce(k, l)
            k += 1

    logger.debug("LLL on dimension %d finished after %d swaps", n, swaps)
    transform = tuple(tuple(int(v) for v in row) for row in h[1:]) if h is not None else ()
    return LLLResult(basis=LatticeBasis.of(b[1:]), transform=transform, swaps=swaps)


def lll_reduce_tracked(basis: LatticeBasis) -> LLLResult:
    """LLL-reduce with delta = 3/4, also returning the unimodular transform."""
    return _reduce_integral(basis, with_transform=True)


def lll_reduce(basis: LatticeBasis) -> LatticeBasis:
    return _reduce_integral(basis, with_transform=False).basis


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def gram_schmidt(basis: LatticeBasis) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Squared Gram-Schmidt norms and mu coefficients as exact fractions."""
    rows = [[Fraction(v) for v in row] for row in basis.rows]
    stars: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * basis.dim for _ in range(basis.dim)]
    for i, row in enumerate(rows):
        star = list(row)
        for j in range(i):
            mu[i][j] = _dot(row, stars[j]) / norms[j]
            star = [s - mu[i][j] * t for s, t in zip(star, stars[j])]
        stars.append(star)
        norms.append(_dot(star, star))
    return norms, mu


def is_lll_reduced(basis: LatticeBasis, delta: Fraction = LLL_DELTA) -> bool:
    norms, mu = gram_schmidt(basis)
    for i in range(basis.dim):
        if any(abs(mu[i][j]) > Fraction(1, 2) for j in range(i)):
            return False
        if i and norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True


def first_vector_norm_bound(basis: LatticeBasis) -> NormBoundWitness:
    """Check ||b_1||^{2d} <= 2^{d(d-1)/2} det^2 exactly."""
    dim = basis.dim
    first = basis.rows[0]
    norm_power = _dot(first, first) ** dim
    det = determinant(basis.rows)
    # d(d-1)/2 is an integer for every d
    bound = 2 ** (dim * (dim - 1) // 2) * det * det
    return NormBoundWitness(passed=norm_power <= bound, norm_power=norm_power, bound=bound)


def _integral_chain(poly: IntPoly) -> list[list[int]]:
    """Sturm chain of the square-free part, each member scaled to integer coefficients."""
    sympy_poly = Poly(list(reversed(poly.coeffs)), _X)
    square_free = sympy_poly.sqf_part()
    if square_free.degree() < 1:
        return []

    chain = []
    for member in square_free.sturm():
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(member.all_coeffs())]
        scale = math.lcm(*(c.denominator for c in coeffs))
        chain.append([int(c * scale) for c in coeffs])
    return chain


def _sign_variations(chain: Sequence[Sequence[int]], x: int) -> int:
    signs = []
    for coeffs in chain:
        value = 0
        for c in reversed(coeffs):
            value = value * x + c
        if value:
            signs.append(value > 0)
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


def integer_roots(h: IntPoly, bound: int) -> list[int]:
    """All integers x with h(x) = 0 and |x| <= bound, ascending."""
    if h.is_zero:
        raise PreconditionError("the zero polynomial has every integer as a root")
    if bound < 0:
        raise PreconditionError(f"root bound must be nonnegative, got {bound}")

    chain = _integral_chain(h)
    if not chain:
        return []

    roots: list[int] = []
    # Sturm counts distinct real roots in (lo, hi] for a square-free chain
    pending = [(-bound - 1, bound, _sign_variations(chain, -bound - 1), _sign_variations(chain, bound))]
    while pending:
        lo, hi, v_lo, v_hi = pending.pop()
        if v_lo - v_hi <= 0:
            continue
        if hi - lo == 1:
            if h.evaluate(hi) == 0:
                roots.append(hi)
            continue
        mid = (lo + hi) // 2
        v_mid = _sign_variations(chain, mid)
        pending.append((mid, hi, v_mid, v_hi))
        pending.append((lo, mid, v_lo, v_mid))

    roots.sort()
    if len(set(roots)) != len(roots):
        raise InvariantError("root isolation reported a root twice")
    return roots
