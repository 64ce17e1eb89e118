"""Exact rational intervals and complex boxes.

All endpoints are ``fractions.Fraction``; sums, products and quotients of
rationals are exact, so interval arithmetic here never rounds.  The only
operation that needs outward rounding is the square root, which is computed
to a caller-supplied tolerance with certified lower/upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Q = Fraction

RationalLike = Union[Fraction, int]


def qify(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def isqrt_floor(n: int) -> int:
    import math

    return math.isqrt(n)


def sqrt_lower(x: Fraction, err: Fraction) -> Fraction:
    """Largest convenient rational L with L <= sqrt(x) and sqrt(x) - L <= err."""
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Q(0)
    # scale so that floor-isqrt of a big integer gives the accuracy we need
    k = 1
    while Q(1, k) > err * err:
        k *= 4
    num = x.numerator * k * k * x.denominator
    lo = Fraction(isqrt_floor(num), k * x.denominator)
    return lo


def sqrt_upper(x: Fraction, err: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Q(0)
    lo = sqrt_lower(x, err)
    if lo > 0 and lo * lo == x:
        return lo
    # lo <= sqrt(x); x/lo >= sqrt(x) is an upper bound when lo > 0
    if lo == 0:
        return err
    return x / lo


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: RationalLike) -> "RatInterval":
        x = qify(x)
        return RatInterval(x, x)

    @staticmethod
    def make(a: RationalLike, b: RationalLike) -> "RatInterval":
        a, b = qify(a), qify(b)
        return RatInterval(min(a, b), max(a, b))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        other = _as_interval(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def recip(self) -> "RatInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_interval(other).recip()

    def __rtruediv__(self, other):
        return _as_interval(other) * self.recip()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** (-n)).recip()
        if n == 0:
            return RatInterval.point(1)
        if n % 2 == 0 and self.contains_zero():
            return RatInterval(Q(0), max(self.hi**n, self.lo**n))
        return RatInterval.make(self.lo**n, self.hi**n)

    def sq(self) -> "RatInterval":
        return self**2

    def sqrt(self, err: Fraction) -> "RatInterval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        return RatInterval(sqrt_lower(self.lo, err), sqrt_upper(self.hi, err))

    def abs(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Q(0), max(-self.lo, self.hi))

    def contains(self, x: RationalLike) -> bool:
        x = qify(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "RatInterval") -> "RatInterval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("empty intersection")
        return RatInterval(lo, hi)

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def sign(self):
        """-1, 0 or +1 when certain, None when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    def certainly_lt(self, other) -> bool:
        return self.hi < _as_interval(other).lo

    def certainly_le(self, other) -> bool:
        return self.hi <= _as_interval(other).lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x) -> RatInterval:
    if isinstance(x, RatInterval):
        return x
    return RatInterval.point(qify(x))


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rectangle re x im in the complex plane."""

    re: RatInterval
    im: RatInterval

    @staticmethod
    def point(re: RationalLike, im: RationalLike = 0) -> "ComplexBox":
        return ComplexBox(RatInterval.point(re), RatInterval.point(im))

    @staticmethod
    def from_real(iv: RatInterval) -> "ComplexBox":
        return ComplexBox(iv, RatInterval.point(0))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def __add__(self, other):
        other = _as_box(other)
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_box(other))

    def __rsub__(self, other):
        return _as_box(other) - self

    def __mul__(self, other):
        other = _as_box(other)
        return ComplexBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def abs_sq(self) -> RatInterval:
        return self.re.sq() + self.im.sq()

    def recip(self) -> "ComplexBox":
        d = self.abs_sq()
        if d.contains_zero():
            raise ZeroDivisionError("box may contain zero")
        return ComplexBox(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * _as_box(other).recip()

    def __rtruediv__(self, other):
        return _as_box(other) * self.recip()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** (-n)).recip()
        out = ComplexBox.point(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def contains_point(self, re: RationalLike, im: RationalLike = 0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def overlaps(self, other: "ComplexBox") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def hull(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re.hull(other.re), self.im.hull(other.im))

    def is_real_line(self) -> bool:
        return self.im.lo == 0 == self.im.hi

    def __str__(self):
        return f"({self.re} + {self.im} i)"


def _as_box(x) -> ComplexBox:
    if isinstance(x, ComplexBox):
        return x
    if isinstance(x, RatInterval):
        return ComplexBox.from_real(x)
    return ComplexBox.point(qify(x))
