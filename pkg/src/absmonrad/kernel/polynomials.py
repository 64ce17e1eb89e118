"""Dense univariate polynomials with exact coefficients.

Coefficients are stored lowest degree first.  The class is generic: any
coefficient type supporting ring operations, truthiness (zero test) and,
where division is used, true division works — ``Fraction`` for ordinary
rational polynomials, ``FieldElement`` for polynomials over a number field.

The zero polynomial has degree ``NEG_INF`` (the spec's "minus infinity"
sentinel), so degree identities like deg(p*q) = deg p + deg q stay valid.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import ComplexBox, Q, RatInterval

NEG_INF = float("-inf")


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((Q(1),))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((Q(0), Q(1)))

    @staticmethod
    def const(c) -> "Polynomial":
        return Polynomial((c,))

    @staticmethod
    def from_int_list(cs: Sequence[int]) -> "Polynomial":
        return Polynomial(tuple(Q(c) for c in cs))

    @staticmethod
    def monomial(k: int, c=Q(1)) -> "Polynomial":
        return Polynomial((Q(0),) * k + (c,))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant(self):
        return self.coeffs[0] if self.coeffs else Q(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Q(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(not (a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        return Polynomial(tuple(c / scalar for c in self.coeffs))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial((self.coeffs[0] * 0 + 1,)) if self.coeffs else Polynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Polynomial"):
        """Euclidean division; coefficient type must support division."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Polynomial(()), self
        quo = [Q(0)] * (dq + 1)
        dlead = other.leading
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if not top:
                continue
            q = top / dlead
            quo[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Polynomial(tuple(quo)), Polynomial(tuple(rem))

    def __mod__(self, other: "Polynomial"):
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    # -- calculus ------------------------------------------------------

    def derivative(self, k: int = 1) -> "Polynomial":
        p = self
        for _ in range(k):
            p = Polynomial(tuple(c * i for i, c in enumerate(p.coeffs) if i >= 1))
        return p

    # -- evaluation and composition -------------------------------------

    def __call__(self, x):
        """Horner evaluation; x may be Fraction, interval, box, field element
        or another Polynomial (composition)."""
        if not self.coeffs:
            if isinstance(x, RatInterval):
                return RatInterval.point(0)
            if isinstance(x, ComplexBox):
                return ComplexBox.point(0)
            if isinstance(x, Polynomial):
                return Polynomial(())
            return x * 0
        acc = self.coeffs[-1]
        if isinstance(x, Polynomial):
            acc = Polynomial((acc,))
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def eval_interval(self, iv: RatInterval) -> RatInterval:
        acc = RatInterval.point(0)
        for c in reversed(self.coeffs):
            acc = acc * iv + RatInterval.point(c)
        return acc

    def eval_box(self, box: ComplexBox) -> ComplexBox:
        acc = ComplexBox.point(0)
        for c in reversed(self.coeffs):
            acc = acc * box + ComplexBox.point(c)
        return acc

    def shift(self, c) -> "Polynomial":
        """p(x + c) via repeated synthetic division."""
        cs = list(self.coeffs)
        n = len(cs)
        out = []
        for _ in range(n):
            # remainder of division by (x - (-c)) ... i.e. evaluate/deflate at -(-c)
            acc = cs[-1]
            newcs = [acc]
            for a in reversed(cs[:-1]):
                acc = acc * c + a
                newcs.append(acc)
            newcs.reverse()
            out.append(newcs[0])
            cs = newcs[1:]
            if not cs:
                break
        return Polynomial(tuple(out))

    def scale_arg(self, c) -> "Polynomial":
        """p(c x)."""
        out, f = [], 1
        for a in self.coeffs:
            out.append(a * f)
            f = f * c
        return Polynomial(tuple(out))

    def reverse(self) -> "Polynomial":
        """x^deg * p(1/x)."""
        return Polynomial(tuple(reversed(self.coeffs)))

    # -- rational-coefficient utilities ---------------------------------

    def to_integer(self) -> tuple[list[int], int]:
        """(integer coefficient list, positive denominator d) with self = p/d."""
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return [int(c * d) for c in self.coeffs], d

    def primitive(self) -> "Polynomial":
        """Integer-scaled, content-free version with positive leading coeff."""
        if not self.coeffs:
            return self
        ints, _ = self.to_integer()
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if g == 0:
            return Polynomial(())
        if ints[-1] < 0:
            g = -g
        return Polynomial(tuple(Q(c // g) for c in ints))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self / self.leading

    def _is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd; rational polynomials go through a primitive PRS over
        the integers (plain Euclid over Q swells coefficients exponentially)."""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        if self._is_rational() and other._is_rational():
            a = [int(c) for c in self.primitive().coeffs]
            b = [int(c) for c in other.primitive().coeffs]
            if len(a) < len(b):
                a, b = b, a
            while b:
                r = _int_pseudo_rem_list(a, b)
                a, b = b, _int_primitive_list(r)
            return Polynomial.from_int_list(a).monic()
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "Polynomial":
        if self.degree <= 1:
            return self
        g = self.gcd(self.derivative())
        if g.degree < 1:
            return self
        return self.exact_div(g)

    def squarefree_decomposition(self) -> list[tuple["Polynomial", int]]:
        """Yun-style list of (factor, multiplicity); factors squarefree, coprime."""
        out = []
        p = self
        if p.degree < 1:
            return [(p, 1)]
        g = p.gcd(p.derivative())
        if g.degree < 1:
            return [(p.monic(), 1)]
        w = p.exact_div(g)
        m = 1
        while w.degree >= 1:
            y = w.gcd(g)
            f = w.exact_div(y)
            if f.degree >= 1:
                out.append((f.monic(), m))
            w, g = y, g.exact_div(y)
            m += 1
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial((x,))


# ---------------------------------------------------------------------------
# Integer fast paths (hot loops: gcd PRS, Sturm chains, bisection refinement).
# ---------------------------------------------------------------------------


def _int_primitive_list(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    if g == 0:
        return []
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _int_pseudo_rem_list(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    delta = len(a) - len(b)
    if delta < 0:
        return a
    for k in range(delta, -1, -1):
        top = a[k + db]
        if top:
            for j in range(len(a)):
                a[j] *= lb
            for j, c in enumerate(b):
                a[k + j] -= top * c
    while a and a[-1] == 0:
        a.pop()
    return a


def int_eval_homogeneous(coeffs: Sequence[int], num: int, den: int) -> int:
    """p(num/den) * den^deg as an exact integer (den > 0)."""
    if not coeffs:
        return 0
    acc = coeffs[-1]
    d = 1
    for a in reversed(coeffs[:-1]):
        d *= den
        acc = acc * num + a * d
    return acc


def int_sign_at(coeffs: Sequence[int], x: Fraction) -> int:
    v = int_eval_homogeneous(coeffs, x.numerator, x.denominator)
    return (v > 0) - (v < 0)
