"""Lattice search for r-th power divisors of N lying in the residue class 1 mod s.

Floating logarithms (128-bit gmpy2 mpfr) only guide parameter choices; every
parameter that matters for correctness is then certified with exact integer
comparisons before a lattice is built.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2

from .. import current_config
from ..errors import (
    ConditionViolated,
    InvariantError,
    NotCoprime,
    NotInvertible,
    ParamsDegenerate,
    PreconditionError,
)
from .arith import gcd, iroot, mod_inv
from .constants import INTERVAL_HALF_WIDTH_DIVISOR, THETA_DENOMINATOR
from .lattice import IntPoly, LatticeBasis, integer_roots, lll_reduce


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftedPoly:
    n: int
    s: int
    s_inv: int
    p_tilde: int
    center: int
    g: IntPoly

    @property
    def shift(self) -> int:
        """(P - P~) / s, the offset between x0 and the root x'."""
        return (self.center - self.p_tilde) // self.s

    def root_to_divisor(self, root: int) -> int:
        return self.s * root + (self.center - self.p_tilde) + 1

    def divisor_to_root(self, divisor: int) -> int:
        return (divisor - 1) // self.s - self.shift


@dataclass(frozen=True)
class SearchParams:
    r: int
    s: int
    d: int
    m: int
    theta: Fraction
    G: int
    G_tilde: int
    H: int
    T: int
    T_prime: int
    alpha: Fraction
    canonical_dimension: bool = True


def _use_log_precision() -> None:
    # logarithms only guide; exact comparisons certify every parameter afterwards
    context = gmpy2.get_context()
    context.precision = max(context.precision, current_config()["LOG_PRECISION_BITS"])


def _require_coprime(n: int, s: int) -> None:
    g = gcd(n, s)
    if g != 1:
        raise NotCoprime(n, s, g)


def default_dimension(n: int) -> int:
    """d = ceil(log2 N) + 1, so that N^{1/(d-1)} <= 2."""
    return (n - 1).bit_length() + 1


def shift_poly(n: int, s: int, center: int) -> ShiftedPoly:
    if s < 2:
        raise PreconditionError(f"modulus s must be at least 2, got {s}")
    if center < 1:
        raise PreconditionError(f"interval center must be positive, got {center}")
    try:
        s_inv = mod_inv(s, n)
    except NotInvertible as exc:
        raise NotCoprime(n, s, exc.gcd) from exc

    p_tilde = center % s
    constant = (s_inv + s_inv * (center - p_tilde)) % n
    return ShiftedPoly(n=n, s=s, s_inv=s_inv, p_tilde=p_tilde, center=center, g=IntPoly.of([constant, 1]))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def build_basis(n: int, r: int, shifted: ShiftedPoly, d: int, m: int, G: int) -> LatticeBasis:
    """Rows are the coefficient vectors of f_i(G x) for 0 <= i < d."""
    if r < 1 or d < 1 or G < 1:
        raise PreconditionError(f"need r, d, G >= 1, got r = {r}, d = {d}, G = {G}")
    if not 1 <= m or r * m > d:
        raise PreconditionError(f"need 1 <= m <= d / r, got m = {m}, d = {d}, r = {r}")

    g = list(shifted.g.coeffs)
    rows: list[list[int]] = []
    power = [1]
    for i in range(d):
        scale = n ** (m - i // r) if i < r * m else 1
        row = [scale * c * G**j for j, c in enumerate(power)]
        rows.append(row + [0] * (d - len(row)))
        power = _poly_mul(power, g)

    diagonal = 1
    for i, row in enumerate(rows):
        diagonal *= row[i]
    expected = G ** (d * (d - 1) // 2) * n ** (r * m * (m + 1) // 2)
    if diagonal != expected:
        raise InvariantError(f"basis determinant {diagonal} differs from G^(d(d-1)/2) N^(rm(m+1)/2) = {expected}")
    return LatticeBasis.of(rows)


def _size_condition(G: int, d: int, r: int, m: int, n: int, lower: int, strict: bool = True) -> bool:
    # the G-size inequality raised to the power 4d
    lhs = G ** (2 * d * (d - 1)) * d ** (2 * d) * 2 ** (d * (d - 1)) * n ** (2 * r * m * (m + 1))
    rhs = lower ** (4 * d * r * m)
    return lhs < rhs if strict else lhs <= rhs


def check_size_condition(params: SearchParams, n: int, center: int) -> bool:
    if center <= params.H:
        raise PreconditionError(f"interval center {center} must exceed the half-width {params.H}")
    return _size_condition(params.G, params.d, params.r, params.m, n, center - params.H)


def _largest_satisfying(guess: int, holds) -> int:
    value = max(guess, 0)
    while value > 0 and not holds(value):
        value -= 1
    while holds(value + 1):
        value += 1
    return value


def _floor_ratio(numerator_base: int, denominator_base: int, scale: int, cap: int) -> int:
    """Largest a <= cap with numerator_base^scale >= denominator_base^a."""
    lhs = numerator_base**scale
    a = 0
    power = 1
    while a < cap and power * denominator_base <= lhs:
        power *= denominator_base
        a += 1
    return a


def derive_params(
    n: int,
    r: int,
    s: int,
    T: int,
    T_prime: Optional[int] = None,
    dimension: Optional[int] = None,
) -> SearchParams:
    T_prime = T if T_prime is None else T_prime
    root = iroot(n, r)
    if not 2 <= T <= T_prime <= root:
        raise PreconditionError(f"need 2 <= T <= T' <= N^(1/r) = {root}, got [{T}, {T_prime}]")

    d = default_dimension(n) if dimension is None else dimension
    if d < 2:
        raise PreconditionError(f"lattice dimension must be at least 2, got {d}")

    _use_log_precision()
    log_n = gmpy2.log(gmpy2.mpz(n))
    log_t = gmpy2.log(gmpy2.mpz(T))
    m_guess = int(gmpy2.floor((d - 1) * log_t / log_n))

    # exact: m = floor((d - 1) log T / log N), i.e. N^m <= T^(d-1) < N^(m+1)
    t_power = T ** (d - 1)
    m = _largest_satisfying(m_guess, lambda k: n**k <= t_power)
    m = min(max(m, 1), d // r)

    theta = Fraction(_floor_ratio(T, n, THETA_DENOMINATOR * r, THETA_DENOMINATOR), THETA_DENOMINATOR)
    alpha = Fraction(_floor_ratio(s, n, THETA_DENOMINATOR, THETA_DENOMINATOR), THETA_DENOMINATOR)

    log_g_tilde = (
        gmpy2.mpfr(2 * r * m) / (d - 1) * log_t
        - gmpy2.log(d) / (d - 1)
        - gmpy2.log(2) / 2
        - gmpy2.mpfr(r * m * (m + 1)) / (d * (d - 1)) * log_n
    )
    g_guess = int(gmpy2.floor(gmpy2.exp(log_g_tilde)))

    # G~ is the largest G meeting the size condition at P - H = T non-strictly
    G_tilde = _largest_satisfying(g_guess, lambda g: _size_condition(g, d, r, m, n, T, strict=False))
    G = _largest_satisfying(g_guess, lambda g: _size_condition(g, d, r, m, n, T))
    if G <= 1:
        raise ParamsDegenerate(f"lattice parameters degenerate for N = {n}, s = {s}, T = {T}: G = {G}")

    return SearchParams(
        r=r,
        s=s,
        d=d,
        m=m,
        theta=theta,
        G=G,
        G_tilde=G_tilde,
        H=(G - 1) * s,
        T=T,
        T_prime=T_prime,
        alpha=alpha,
        canonical_dimension=dimension is None,
    )


def half_width_meets_bound(params: SearchParams, n: int) -> bool:
    """H >= (s / 24) N^{theta^2 / r}, compared through exact integer powers."""
    q = params.theta.denominator**2 * params.r
    lhs = (INTERVAL_HALF_WIDTH_DIVISOR * params.H) ** q
    rhs = params.s**q * n ** (params.theta.numerator**2)
    return lhs >= rhs


def search_interval(n: int, r: int, s: int, center: int, half_width: int, d: int, m: int) -> list[int]:
    """All p in [P - H, P + H] with p^r | N and p = 1 (mod s)."""
    _require_coprime(n, s)
    if not 0 <= half_width < center:
        raise PreconditionError(f"need 0 <= H < P, got H = {half_width}, P = {center}")
    if center > iroot(n, r) + half_width:
        raise PreconditionError(f"interval center {center} lies beyond N^(1/r) + H")
    if not 1 <= m or r * m > d:
        raise PreconditionError(f"need 1 <= m <= d / r, got m = {m}, d = {d}, r = {r}")

    G = -(-half_width // s) + 1
    if not _size_condition(G, d, r, m, n, center - half_width):
        raise ConditionViolated(
            f"size condition fails for P = {center}, H = {half_width}, d = {d}, m = {m}, G = {G}"
        )

    shifted = shift_poly(n, s, center)
    reduced = lll_reduce(build_basis(n, r, shifted, d, m, G))
    shortest = reduced.rows[0]

    coeffs = []
    for j, w in enumerate(shortest):
        h_j, remainder = divmod(w, G**j)
        if remainder:
            raise InvariantError(f"coefficient w_{j} = {w} is not divisible by G^{j} = {G**j}")
        coeffs.append(h_j)

    h = IntPoly.of(coeffs)
    found = []
    for root in integer_roots(h, G):
        p = shifted.root_to_divisor(root)
        if p > 1 and p % s == 1 and n % p**r == 0 and center - half_width <= p <= center + half_width:
            found.append(p)
    logger.debug("interval [%d, %d]: deg h = %d, found %s", center - half_width, center + half_width, h.degree, found)
    return sorted(found)


def scan_progression(n: int, r: int, s: int, lo: int, hi: int) -> list[int]:
    """Direct scan of p = 1 (mod s) in [lo, hi]."""
    first = lo + (1 - lo) % s
    if r == 1:
        return [p for p in range(max(first, s + 1), hi + 1, s) if n % p == 0]
    return [p for p in range(max(first, s + 1), hi + 1, s) if n % p**r == 0]


def _cofactor_window(n: int, r: int, lo: int, hi: int) -> tuple[int, int]:
    # p in [lo, hi] with p^r | N exactly when N / p^r lies in [ceil(N / hi^r), floor(N / lo^r)]
    return -(-n // hi**r), n // lo**r


def scan_cofactors(n: int, r: int, s: int, lo: int, hi: int) -> list[int]:
    """Same answer as scan_progression, found through the cofactors c = N / p^r.

    p^r = 1 (mod s) forces c = N (mod s), so only that progression is walked.
    """
    c_lo, c_hi = _cofactor_window(n, r, lo, hi)
    first = c_lo + (n - c_lo) % s
    found = []
    for c in range(first, c_hi + 1, s):
        if n % c:
            continue
        p = iroot(n // c, r)
        if p > 1 and p**r * c == n and lo <= p <= hi and p % s == 1:
            found.append(p)
    return sorted(found)


def scan_counts(n: int, r: int, s: int, lo: int, hi: int) -> tuple[int, int]:
    """Steps taken by scan_progression and by scan_cofactors on [lo, hi]."""
    c_lo, c_hi = _cofactor_window(n, r, lo, hi)
    return (hi - lo) // s + 1, max(c_hi - c_lo, 0) // s + 1


def scan_range(n: int, r: int, s: int, lo: int, hi: int) -> list[int]:
    direct, cofactor = scan_counts(n, r, s, lo, hi)
    if cofactor < direct:
        return scan_cofactors(n, r, s, lo, hi)
    return scan_progression(n, r, s, lo, hi)


def lattice_cost(params: SearchParams, n: int) -> int:
    """Estimated cost of the lattice searches covering [T, T'], in scan steps.

    Per interval: about d^2 log(entries) swaps, each touching d entries of the
    basis, whose bit size is roughly r m log2 N + (d - 1) log2 G.
    """
    intervals = max(1, -(-(params.T_prime - params.T) // (2 * params.H)))
    entry_bits = params.r * params.m * n.bit_length() + (params.d - 1) * params.G.bit_length()
    return intervals * params.d**3 * entry_bits


def residue_bound_holds(params: SearchParams, n: int) -> bool:
    """s >= N^alpha, exactly."""
    return params.s**params.alpha.denominator >= n**params.alpha.numerator


def search_range(
    n: int,
    r: int,
    s: int,
    T: int,
    T_prime: int,
    threads: Optional[int] = None,
    dimension: Optional[int] = None,
) -> list[int]:
    _require_coprime(n, s)
    if s < 2:
        raise PreconditionError(f"modulus s must be at least 2, got {s}")

    try:
        params = derive_params(n, r, s, T, T_prime, dimension)
    except ParamsDegenerate as exc:
        logger.info("%s; scanning [%d, %d] directly", exc, T, T_prime)
        return scan_range(n, r, s, T, T_prime)

    H = params.H
    count = max(1, -(-(T_prime - T) // (2 * H)))
    if T + 2 * count * H < T_prime:
        raise InvariantError(f"{count} intervals of half-width {H} do not cover [{T}, {T_prime}]")
    if not residue_bound_holds(params, n):
        raise InvariantError(f"s = {s} is below N^alpha for alpha = {params.alpha}")
    if params.canonical_dimension and not half_width_meets_bound(params, n):
        raise InvariantError(f"half-width H = {H} is below (s/24) N^(theta^2/r) for theta = {params.theta}")

    centers = [T + (2 * k + 1) * H for k in range(count)]
    logger.debug(
        "range [%d, %d]: d = %d, m = %d, G = %d, H = %d, alpha = %s, %d intervals",
        T, T_prime, params.d, params.m, params.G, H, params.alpha, count,
    )

    def run(center: int) -> list[int]:
        return search_interval(n, r, s, center, H, params.d, params.m)

    workers = threads if threads is not None else current_config()["THREADS"]
    if workers > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run, centers))
    else:
        batches = [run(center) for center in centers]

    return sorted({p for batch in batches for p in batch if T <= p <= T_prime})


def brute_force_limit(n: int, r: int) -> int:
    """B0 = ceil(4^{sqrt(log2 N / r)})."""
    _use_log_precision()
    exponent = gmpy2.sqrt(gmpy2.log2(gmpy2.mpz(n)) / r)
    return int(gmpy2.ceil(gmpy2.exp2(2 * exponent)))


def _prefers_scan(n: int, r: int, s: int, T: int, T_prime: int, scan_limit: Optional[int]) -> bool:
    steps = min(scan_counts(n, r, s, T, T_prime))
    if scan_limit is not None:
        return steps <= scan_limit
    # no lattice search costs less than d^3 r log2 N
    if steps <= default_dimension(n) ** 3 * r * n.bit_length():
        return True
    try:
        params = derive_params(n, r, s, T, T_prime)
    except ParamsDegenerate:
        return True
    return steps <= lattice_cost(params, n)


def divisors_in_class(
    n: int,
    r: int,
    s: int,
    scan_limit: Optional[int] = None,
    threads: Optional[int] = None,
) -> list[int]:
    """All p > 1 with p^r | N and p = 1 (mod s), ascending.

    Each dyadic range goes to the lattice search unless one of the two scans
    is cheaper: a fixed ``scan_limit`` (argument or ``SCAN_LIMIT`` setting)
    bounds the scan steps directly, otherwise ``lattice_cost`` decides.
    """
    if n < 2 or r < 1 or s < 2:
        raise PreconditionError(f"need N >= 2, r >= 1, s >= 2, got N = {n}, r = {r}, s = {s}")
    _require_coprime(n, s)
    if scan_limit is None:
        scan_limit = current_config()["SCAN_LIMIT"]

    root = iroot(n, r)
    limit = brute_force_limit(n, r)
    found = set(scan_progression(n, r, s, 2, min(limit, root)))

    T = limit
    while T < root:
        T_prime = min(2 * T, root)
        if _prefers_scan(n, r, s, T, T_prime, scan_limit):
            batch = scan_range(n, r, s, T, T_prime)
        else:
            batch = search_range(n, r, s, T, T_prime, threads=threads)
        logger.debug("dyadic range [%d, %d]: %s", T, T_prime, batch)
        found.update(batch)
        T = T_prime

    for p in found:
        if n % p**r or p % s != 1:
            raise InvariantError(f"reported divisor {p} fails p^r | N or p = 1 (mod s)")
    return sorted(found)
