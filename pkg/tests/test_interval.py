from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pgap.interval import (
    CertifiedInterval,
    exp,
    format_decimal,
    interval,
    log,
    log10,
    log_int,
    power,
    round_down,
    round_up,
)

mpmath.mp.dps = 80


def encloses(iv, value):
    v = Fraction(mpmath.nstr(value, 70, strip_zeros=False).replace("e", "E")) if not isinstance(value, Fraction) else value
    return iv.lo <= v <= iv.hi


def mp_fraction(x):
    return mpmath.mpf(x.numerator) / x.denominator


rationals = st.fractions(min_value=Fraction(-40), max_value=Fraction(40), max_denominator=10**6)
positives = st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(10**9), max_denominator=10**6)


@settings(max_examples=150, deadline=None)
@given(rationals)
def test_exp_encloses(q):
    iv = exp(q, 128)
    assert encloses(iv, mpmath.exp(mp_fraction(q)))
    assert iv.width <= abs(iv.hi) * Fraction(1, 2**100) + Fraction(1, 2**120)


@settings(max_examples=150, deadline=None)
@given(positives)
def test_log_encloses(q):
    iv = log(q, 128)
    assert encloses(iv, mpmath.log(mp_fraction(q)))
    assert iv.width <= Fraction(1, 2**100)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 10**300))
def test_log_int_big(n):
    iv = log_int(n, 128)
    assert encloses(iv, mpmath.log(n))


def test_exact_cases():
    assert exp(0) == CertifiedInterval(1, 1)
    assert log(1) == CertifiedInterval(0, 0)
    assert log10(1000, 96).contains(3)
    assert power(2, 10, 96).contains(1024)


def test_log_rejects_nonpositive():
    with pytest.raises(ValueError):
        log(0)
    with pytest.raises(ValueError):
        log(interval(-1, 2))


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(8, 200))
def test_directed_rounding(q, prec):
    lo, hi = round_down(q, prec), round_up(q, prec)
    assert lo <= q <= hi
    assert hi - lo <= abs(q) * Fraction(1, 2 ** (prec - 1)) or q == 0


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, rationals, rationals)
def test_arithmetic_encloses(a, b, c, d):
    x = interval(min(a, b), max(a, b))
    y = interval(min(c, d), max(c, d))
    for px in (x.lo, x.hi, x.mid):
        for py in (y.lo, y.hi, y.mid):
            assert (x + y).contains(px + py)
            assert (x - y).contains(px - py)
            assert (x * y).contains(px * py)
            if not y.contains(0):
                assert (x / y).contains(px / py)


def test_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        interval(1) / interval(-1, 1)


def test_strict_comparison():
    assert interval("0.1", "0.2").strictly_below(interval("0.3"))
    assert not interval("0.1", "0.3").strictly_below(interval("0.3"))
    with pytest.raises(ValueError):
        CertifiedInterval(2, 1)


def test_description_ignored_in_equality():
    assert interval(1, 2, "a") == interval(1, 2, "b")


@pytest.mark.parametrize(
    "q, digits, direction, expected",
    [
        (Fraction(2, 3), 5, "nearest", "0.66667"),
        (Fraction(2, 3), 5, "down", "0.66666"),
        (Fraction(-2, 3), 5, "down", "-0.66667"),
        (Fraction(-2, 3), 5, "up", "-0.66666"),
        (Fraction(999999, 100000), 3, "up", "10"),
        (Fraction(18338349115538768860, 10**19) * 10**76, 15, "nearest", "1.83383491155388e76"),
        (Fraction(1, 10**8), 3, "nearest", "1e-8"),
        (0, 5, "nearest", "0"),
    ],
)
def test_format_decimal(q, digits, direction, expected):
    assert format_decimal(q, digits, direction) == expected


@settings(max_examples=200, deadline=None)
@given(rationals.filter(lambda q: q != 0), st.integers(1, 25))
def test_format_decimal_brackets(q, digits):
    lo = Fraction(Decimal(format_decimal(q, digits, "down")))
    hi = Fraction(Decimal(format_decimal(q, digits, "up")))
    assert lo <= q <= hi
