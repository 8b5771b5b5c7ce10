"""Outward-rounded rational intervals, used only where 2**x has a non-integer exponent."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class ExactnessUnavailable(ArithmeticError):
    """An enclosure was too wide to decide a comparison."""


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction
    precision_bits: int = 0

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, other: Union["Interval", Fraction, int]) -> bool:
        o = as_interval(other)
        return self.lower <= o.lower and o.upper <= self.upper

    def __add__(self, other):
        o = as_interval(other)
        return Interval(self.lower + o.lower, self.upper + o.upper, _bits(self, o))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.upper, -self.lower, self.precision_bits)

    def __sub__(self, other):
        return self + (-as_interval(other))

    def __rsub__(self, other):
        return as_interval(other) + (-self)

    def __mul__(self, other):
        o = as_interval(other)
        ps = (self.lower * o.lower, self.lower * o.upper, self.upper * o.lower, self.upper * o.upper)
        return Interval(min(ps), max(ps), _bits(self, o))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lower <= 0 <= self.upper:
            raise ExactnessUnavailable("reciprocal of an interval containing 0")
        return Interval(1 / self.upper, 1 / self.lower, self.precision_bits)

    def __truediv__(self, other):
        return self * as_interval(other).reciprocal()

    def __rtruediv__(self, other):
        return as_interval(other) * self.reciprocal()

    def __abs__(self):
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lower, self.upper), self.precision_bits)

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


def _bits(a, b) -> int:
    pa = a.precision_bits if isinstance(a, Interval) and a.width else None
    pb = b.precision_bits if isinstance(b, Interval) and b.width else None
    bits = [p for p in (pa, pb) if p is not None]
    return min(bits) if bits else max(a.precision_bits, b.precision_bits)


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    x = Fraction(x)
    return Interval(x, x, 0)


def is_exact(x) -> bool:
    return not isinstance(x, Interval)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, in integer arithmetic."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # upper bound on the root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def pow2(x: Fraction, precision: int = 64):
    """2**x: exact Fraction for integer x, otherwise an enclosure with dyadic bounds of ``precision`` bits."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(2) ** x.numerator
    if x < 0:
        return pow2(-x, precision).reciprocal()
    p, q = x.numerator, x.denominator
    m = iroot(1 << (p + precision * q), q)
    scale = Fraction(1, 1 << precision)
    # q does not divide p, so 2**(p/q) is irrational and strictly inside (m, m+1) * scale
    return Interval(m * scale, (m + 1) * scale, precision)


def definitely_gt(a, b) -> bool:
    """Certified ``a > b``; raises ExactnessUnavailable when the enclosures overlap."""
    if is_exact(a) and is_exact(b):
        return a > b
    ia, ib = as_interval(a), as_interval(b)
    if ia.lower > ib.upper:
        return True
    if ia.upper <= ib.lower:
        return False
    raise ExactnessUnavailable(f"cannot decide {ia} > {ib}")


def definitely_ge(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a >= b
    ia, ib = as_interval(a), as_interval(b)
    if ia.lower >= ib.upper:
        return True
    if ia.upper < ib.lower:
        return False
    raise ExactnessUnavailable(f"cannot decide {ia} >= {ib}")


def definitely_eq(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    ia, ib = as_interval(a), as_interval(b)
    if ia.upper < ib.lower or ib.upper < ia.lower:
        return False
    raise ExactnessUnavailable(f"cannot decide {ia} == {ib}")


def lower_bound(x) -> Fraction:
    return x.lower if isinstance(x, Interval) else Fraction(x)
