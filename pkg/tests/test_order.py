import math

import pytest

from ordseek.errors import NotAUnit, PreconditionError
from ordseek.models import OrderResult, OrderStatus
from ordseek.services.order import order_upto
from ordseek.services.reference import naive_order


@pytest.mark.parametrize(
    "n, a, bound, expected",
    [
        (7, 3, 10, OrderResult.exact(6)),
        (143, 2, 3, OrderResult.greater_than(3)),
        (13, 5, 10, OrderResult.exact(4)),
        (143, 1, 5, OrderResult.exact(1)),
        (2, 1, 1, OrderResult.exact(1)),
        (143, 2, 60, OrderResult.exact(60)),
        (143, 2, 59, OrderResult.greater_than(59)),
        (2047, 2, 11, OrderResult.exact(11)),
    ],
)
def test_order_upto(n, a, bound, expected):
    assert order_upto(n, a, bound) == expected


def test_text_form():
    assert str(order_upto(7, 3, 10)) == "exact 6"
    assert str(order_upto(143, 2, 3)) == "greater-than 3"
    assert order_upto(143, 2, 3).status is OrderStatus.GREATER_THAN


def test_non_unit_reports_gcd():
    with pytest.raises(NotAUnit) as excinfo:
        order_upto(6, 2, 10)
    assert excinfo.value.gcd == 2
    assert "non-unit" in str(excinfo.value)


def test_bad_arguments():
    with pytest.raises(PreconditionError):
        order_upto(1, 1, 1)
    with pytest.raises(PreconditionError):
        order_upto(7, 7, 3)
    with pytest.raises(PreconditionError):
        order_upto(7, 3, 0)


def _check_against_oracle(limit_n, bounds):
    for n in range(2, limit_n + 1):
        for a in range(1, n):
            if math.gcd(a, n) != 1:
                continue
            true_order = naive_order(n, a)
            for bound in bounds:
                expected = OrderResult.exact(true_order) if true_order <= bound else OrderResult.greater_than(bound)
                assert order_upto(n, a, bound) == expected, (n, a, bound)


def test_matches_naive_order_small():
    _check_against_oracle(60, range(1, 51))


@pytest.mark.slow
def test_matches_naive_order_exhaustive():
    _check_against_oracle(500, range(1, 51))


def test_monotone_in_bound():
    n, a = 1009 * 13, 7
    true_order = naive_order(n, a)
    for bound in range(true_order, true_order + 40):
        assert order_upto(n, a, bound) == OrderResult.exact(true_order)
