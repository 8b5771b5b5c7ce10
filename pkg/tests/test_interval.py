from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rnnfsm.interval import (
    ExactnessUnavailable, Interval, definitely_eq, definitely_ge, definitely_gt, iroot, pow2,
)

small_fracs = st.fractions(min_value=-6, max_value=6, max_denominator=12)


@given(st.integers(0, 10 ** 40), st.integers(1, 7))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


def test_pow2_integer_exponents_are_exact():
    assert pow2(Fraction(5)) == 32
    assert pow2(Fraction(-3)) == Fraction(1, 8)


@given(small_fracs.filter(lambda x: x.denominator > 1), st.integers(8, 80))
def test_pow2_encloses_true_value(x, p):
    enc = pow2(x, p)
    # 2**x is in [lo, hi]  iff  lo**q <= 2**p_num <= hi**q for positive bounds
    q, num = x.denominator, x.numerator
    lo, hi = enc.lower, enc.upper
    target = Fraction(2) ** num
    assert 0 < lo < hi
    assert lo ** q <= target <= hi ** q
    assert hi - lo <= Fraction(1, 2 ** p)


@given(small_fracs.filter(lambda x: x.denominator > 1), st.integers(4, 60))
def test_refinement_is_nested(x, p):
    coarse, fine = pow2(x, p), pow2(x, p + 8)
    assert coarse.contains(fine)
    assert fine.width < coarse.width


def test_interval_arithmetic():
    a, b = Interval(Fraction(1), Fraction(2)), Interval(Fraction(-1), Fraction(3))
    assert a + b == Interval(Fraction(0), Fraction(5))
    assert a - b == Interval(Fraction(-2), Fraction(3))
    assert a * b == Interval(Fraction(-2), Fraction(6))
    assert (1 / a) == Interval(Fraction(1, 2), Fraction(1))
    with pytest.raises(ExactnessUnavailable):
        a / b
    with pytest.raises(ValueError):
        Interval(Fraction(2), Fraction(1))


def test_certified_comparisons():
    x = Interval(Fraction(1), Fraction(2))
    assert definitely_gt(x, Fraction(1, 2))
    assert not definitely_gt(x, Fraction(3))
    assert definitely_ge(x, Fraction(1))
    assert not definitely_eq(x, Fraction(5))
    with pytest.raises(ExactnessUnavailable):
        definitely_gt(x, Fraction(3, 2))
    with pytest.raises(ExactnessUnavailable):
        definitely_eq(x, Fraction(3, 2))
    assert definitely_eq(Fraction(1, 3), Fraction(2, 6))
