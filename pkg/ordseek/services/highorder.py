"""Deterministic search for an element of large multiplicative order modulo N.

Each run ends in one of three ways: an element whose order exceeds the
target D, a nontrivial factor of N, or the verdict that N is prime.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

from .. import current_config
from ..errors import InvariantError, PreconditionError
from ..models import (
    HighOrderState,
    HighOrderTrace,
    IterationRecord,
    Outcome,
    UniformityResult,
    UniformityStatus,
)
from .arith import ceil_root, gcd, iroot, lcm, mod_pow
from .order import order_upto
from .residue_factor import divisors_in_class
from .smallfactor import factorize_upto_sqrt, smallest_prime_factor_upto


logger = logging.getLogger(__name__)


def minimum_target_order(n: int, r: int = 1) -> int:
    """Smallest admissible D, i.e. the least D0 with D0^(6r) >= N."""
    if n < 2 or r < 1:
        raise PreconditionError(f"need N >= 2 and r >= 1, got N = {n}, r = {r}")
    return ceil_root(n, 6 * r)


def certify_uniform_order(
    n: int,
    a: int,
    m: int,
    factors: Optional[Sequence[tuple[int, int]]] = None,
) -> UniformityResult:
    """Factor(g) for the first prime q | m with g = gcd(N, a^(m/q) - 1) != 1, else Uniform."""
    if m < 1:
        raise PreconditionError(f"order must be positive, got {m}")
    if factors is None:
        factors = factorize_upto_sqrt(m) if m > 1 else []

    for q, _ in factors:
        g = gcd(n, (mod_pow(a, m // q, n) - 1) % n)
        if g == n:
            raise PreconditionError(f"{m} is not the order of {a} modulo {n}: a^{m // q} = 1")
        if g != 1:
            return UniformityResult(UniformityStatus.FACTOR, g)
    return UniformityResult(UniformityStatus.UNIFORM)


def _confirm_prime(n: int) -> bool:
    root = iroot(n, 2)
    if root < 2:
        return True
    return smallest_prime_factor_upto(n, root).found is None


def _finish(outcome: Outcome, trace: HighOrderTrace, step: str) -> tuple[Outcome, HighOrderTrace]:
    trace.final_step = step
    logger.info(
        "%s after %d iterations (%s), longest scan %d", outcome, len(trace.iterations), step, trace.max_scan_span
    )
    return outcome, trace


def run_high_order(
    n: int,
    D: int,
    r: int = 1,
    *,
    permissive: bool = False,
) -> tuple[Outcome, HighOrderTrace]:
    if n < 2:
        raise PreconditionError(f"N must be at least 2, got {n}")
    if r < 1:
        raise PreconditionError(f"power r must be positive, got {r}")
    if not 1 <= D <= n:
        raise PreconditionError(f"target order must satisfy 1 <= D <= N, got D = {D}")
    floor_d = minimum_target_order(n, r)
    if D < floor_d and not permissive:
        raise PreconditionError(f"target order D = {D} is below ceil(N^(1/{6 * r})) = {floor_d}")

    config = current_config()
    trace = HighOrderTrace()

    # no prime factor of N lies at or below 2D past this point
    found = smallest_prime_factor_upto(n, min(2 * D, n)).found
    if found is not None:
        return _finish(Outcome.prime() if found == n else Outcome.factor(found), trace, "small-factor")

    window = config["WINDOW_FACTOR"] * ceil_root(D, 2)
    state = HighOrderState()
    while True:
        state.iteration += 1
        if state.iteration > D.bit_length() + 1:
            raise InvariantError(f"iteration {state.iteration} exceeds log2(D) + 1 for D = {D}")

        start = state.a
        while True:
            a = state.a
            if n % a == 0:
                return _finish(Outcome.factor(a) if a < n else Outcome.prime(), trace, "scan-divisor")
            g = gcd(a, n)
            if g != 1:
                return _finish(Outcome.factor(g), trace, "scan-gcd")
            if mod_pow(a, state.M, n) != 1:
                break
            state.a += 1

        span = state.a - start
        if span > window:
            trace.window_violations.append((start, state.a))
            logger.warning("scan from %d needed %d steps, beyond the window of %d", start, span, window)

        result = order_upto(n, state.a, D)
        if not result.is_exact:
            return _finish(Outcome.element(state.a, D), trace, "element")

        m_i = result.value
        uniformity = certify_uniform_order(n, state.a, m_i, factorize_upto_sqrt(m_i))
        if not uniformity.is_uniform:
            return _finish(Outcome.factor(uniformity.factor), trace, "uniformity")

        new_M = lcm(state.M, m_i)
        if new_M < 2 * state.M:
            raise InvariantError(f"lcm {new_M} did not at least double M = {state.M}")
        trace.iterations.append(IterationRecord(a=state.a, order=m_i, lcm_after=new_M, scan_span=span))
        logger.info("iteration %d: ord(%d) = %d, M = %d", state.iteration, state.a, m_i, new_M)
        state.M = new_M

        if new_M >= D:
            break

    g = gcd(n, state.M)
    if g == n:
        raise InvariantError(f"N = {n} divides M = {state.M} although its prime factors exceed 2D")
    if g != 1:
        return _finish(Outcome.factor(g), trace, "lcm-gcd")

    divisors = [p for p in divisors_in_class(n, r, state.M) if p < n]
    if divisors:
        return _finish(Outcome.factor(divisors[0]), trace, "residue-divisor")

    if not _confirm_prime(n):
        if r > 1:
            raise PreconditionError(f"N = {n} has no {r}-th power divisor = 1 (mod {state.M})")
        raise InvariantError(f"no divisor of N = {n} is 1 (mod {state.M}) yet N is composite")
    return _finish(Outcome.prime(), trace, "prime")


def find_high_order_or_factor(n: int, D: int, *, permissive: bool = False) -> Outcome:
    return run_high_order(n, D, permissive=permissive)[0]


def find_high_order_or_factor_rpower(n: int, D: int, r: int, *, permissive: bool = False) -> Outcome:
    """Variant for N promised an r-th power divisor; D may drop to ceil(N^(1/6r))."""
    if r < 2:
        raise PreconditionError(f"the r-power variant needs r >= 2, got {r}")
    return run_high_order(n, D, r, permissive=permissive)[0]
