import random

import pytest
from sympy import isprime, n_order, nextprime

from ordseek.errors import PreconditionError
from ordseek.models import HighOrderTrace, IterationRecord, Outcome, OutcomeKind, UniformityStatus
from ordseek.services.arith import ceil_root
from ordseek.services.highorder import (
    certify_uniform_order,
    find_high_order_or_factor,
    find_high_order_or_factor_rpower,
    minimum_target_order,
    run_high_order,
)
from ordseek.services.reference import naive_order, naive_order_exceeds


@pytest.mark.parametrize(
    "n, bound, expected",
    [
        (15, 2, Outcome.factor(3)),
        (5, 3, Outcome.prime()),
        (143, 3, Outcome.element(2, 3)),
        (49, 2, Outcome.element(2, 2)),
    ],
)
def test_find_high_order_or_factor(n, bound, expected):
    assert find_high_order_or_factor(n, bound) == expected


def test_text_and_dict_forms():
    outcome = find_high_order_or_factor(143, 3)
    assert str(outcome) == "element 2"
    assert outcome.to_dict() == {"outcome": "element", "value": "2", "target_order": "3"}
    assert str(Outcome.prime()) == "prime"
    assert Outcome.factor(3).to_dict() == {"outcome": "factor", "value": "3", "target_order": None}


def test_residue_class_step_finds_factor():
    outcome, trace = run_high_order(2047, 11)
    assert outcome == Outcome.factor(23)
    assert trace.final_step == "residue-divisor"
    assert [(it.a, it.order, it.lcm_after) for it in trace.iterations] == [(2, 11, 11)]
    assert trace.max_scan_span == 0
    assert trace.window_violations == []


def test_trace_records_longest_scan():
    assert HighOrderTrace().max_scan_span == 0
    trace = HighOrderTrace(iterations=[IterationRecord(2, 6, 6, 3), IterationRecord(9, 4, 12, 7)])
    assert trace.max_scan_span == 7


def test_mersenne_composite(settings):
    settings["SCAN_LIMIT"] = 10**6
    outcome, trace = run_high_order(2**23 - 1, 23)
    assert outcome == Outcome.factor(47)
    assert trace.final_step == "residue-divisor"


def test_small_prime_short_circuits():
    outcome, trace = run_high_order(101, 60)
    assert outcome == Outcome.prime()
    assert trace.final_step == "small-factor"


def test_preconditions():
    with pytest.raises(PreconditionError):
        find_high_order_or_factor(143, 144)
    with pytest.raises(PreconditionError):
        find_high_order_or_factor(1, 1)
    # ceil(143^(1/6)) = 3
    with pytest.raises(PreconditionError):
        find_high_order_or_factor(143, 2)
    assert find_high_order_or_factor(143, 2, permissive=True) == Outcome.element(2, 2)


def test_minimum_target_order():
    assert minimum_target_order(143) == 3
    assert minimum_target_order(2**23 - 1) == 15
    assert minimum_target_order(363, 2) == 2
    assert minimum_target_order(2, 1) == 2


@pytest.mark.parametrize(
    "n, a, m, expected",
    [
        (91, 3, 6, (UniformityStatus.FACTOR, 13)),
        (91, 2, 12, (UniformityStatus.FACTOR, 7)),
        (91, 90, 2, (UniformityStatus.UNIFORM, None)),
    ],
)
def test_certify_uniform_order(n, a, m, expected):
    result = certify_uniform_order(n, a, m)
    assert (result.status, result.factor) == expected


def test_uniform_order_holds_modulo_each_prime():
    p, q = 211, 337
    n = p * q
    for a in range(2, 120):
        if n % a == 0:
            continue
        m = naive_order(n, a)
        result = certify_uniform_order(n, a, m)
        if result.is_uniform:
            assert n_order(a, p) == m and n_order(a, q) == m
        else:
            assert 1 < result.factor < n and n % result.factor == 0


def test_certify_rejects_non_order():
    with pytest.raises(PreconditionError):
        certify_uniform_order(91, 3, 12)


def test_rpower_variant():
    assert find_high_order_or_factor_rpower(363, 2, 2) == Outcome.factor(3)
    with pytest.raises(PreconditionError):
        find_high_order_or_factor_rpower(363, 2, 1)


def _check_outcome(n, bound, outcome):
    if outcome.kind is OutcomeKind.ELEMENT:
        assert outcome.target_order == bound
        assert naive_order_exceeds(n, outcome.value, bound)
    elif outcome.kind is OutcomeKind.FACTOR:
        assert 1 < outcome.value < n and n % outcome.value == 0
    else:
        assert isprime(n)


def test_outcomes_on_random_semiprimes(settings):
    settings["SCAN_LIMIT"] = 10**6
    rng = random.Random(41)
    for _ in range(25):
        p = nextprime(rng.randrange(200, 2000))
        q = nextprime(rng.randrange(200, 2000))
        n = p * q
        bound = minimum_target_order(n)
        outcome, trace = run_high_order(n, bound)
        _check_outcome(n, bound, outcome)
        assert len(trace.iterations) <= bound.bit_length() + 1
        assert trace.window_violations == []
        assert trace.max_scan_span <= settings["WINDOW_FACTOR"] * ceil_root(bound, 2)


def test_outcomes_for_every_small_modulus(settings):
    settings["SCAN_LIMIT"] = 4096
    for n in range(2, 400):
        bound = minimum_target_order(n)
        outcome = find_high_order_or_factor(n, bound)
        _check_outcome(n, bound, outcome)


@pytest.mark.slow
def test_outcomes_on_large_semiprimes(settings):
    settings["SCAN_LIMIT"] = None
    rng = random.Random(43)
    for _ in range(50):
        p = nextprime(rng.randrange(2**30, 2**32))
        q = nextprime(rng.randrange(2**30, 2**32))
        n = p * q
        bound = minimum_target_order(n)
        outcome = find_high_order_or_factor(n, bound)
        if outcome.kind is OutcomeKind.ELEMENT:
            order = n_order(outcome.value, n)
            assert order > bound
        else:
            assert outcome.kind is OutcomeKind.FACTOR and outcome.value in (p, q)
