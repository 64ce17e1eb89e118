"""Exact arithmetic in Q(alpha) for a real algebraic generator alpha.

Elements are polynomials in alpha reduced modulo the (squarefree, not
necessarily irreducible) defining polynomial.  Zero testing is exact: the
representation vanishes at alpha iff gcd(rep, modulus) has alpha as a root,
which the root object decides through Sturm counting.  When a division runs
into a zero divisor of a reducible modulus, the modulus is shrunk to the
factor that still has alpha as a root; this preserves the value semantics of
every existing element.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .algebraic import AlgebraicNumber, algebraic_from_fraction
from .polynomials import Polynomial
from .rationals import Q, RatInterval
from .resultants import annihilating_polynomial
from .sturm import int_squarefree, isolate_real_roots, refine_sign_change


class NumberField:
    def __init__(self, alpha: AlgebraicNumber):
        if not alpha.is_real:
            raise ValueError("number fields are built over real generators only")
        self.alpha = alpha
        self.modulus = alpha.defining  # may shrink to a factor, alpha stays a root

    @staticmethod
    def quadratic(n: int) -> "NumberField":
        """Q(sqrt(n)) for a positive nonsquare integer n."""
        from .algebraic import root_object

        return NumberField(root_object([-n, 0, 1], 2))

    @property
    def degree(self) -> int:
        return int(self.modulus.degree)

    def element(self, coeffs: Iterable) -> "FieldElement":
        rep = Polynomial([c if isinstance(c, Fraction) else Q(c) for c in coeffs])
        return FieldElement(self, rep % self.modulus)

    def gen(self) -> "FieldElement":
        return self.element([0, 1])

    def from_fraction(self, q) -> "FieldElement":
        return self.element([q])

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def _shrink_modulus(self, factor: Polynomial):
        self.modulus = factor.primitive()

    def __repr__(self):
        return f"NumberField(alpha~{float(self.alpha):.6f}, deg {self.degree})"


Scalar = Union[Fraction, int]


class FieldElement:
    __slots__ = ("field", "rep", "_zero")

    def __init__(self, field: NumberField, rep: Polynomial):
        self.field = field
        self.rep = rep
        self._zero = None if rep.coeffs else True

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Polynomial((Q(other),)))
        return NotImplemented

    # -- ring/field operations ---------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, (self.rep * o.rep) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero field element")
        f = self.field
        while True:
            g, s = _half_xgcd(self.rep, f.modulus)
            if g.degree < 1:
                return FieldElement(f, (s / g.coeffs[0]) % f.modulus)
            # zero divisor: modulus reducible; keep the factor with alpha
            if f.alpha.is_root_of(g):
                raise ZeroDivisionError("inverting zero field element")
            f._shrink_modulus(f.modulus.exact_div(g))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElement(self.field, Polynomial((Q(1),)))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        if self._zero is None:
            if not self.rep.coeffs:
                self._zero = True
            else:
                g = self.rep.gcd(self.field.modulus)
                self._zero = g.degree >= 1 and self.field.alpha.is_root_of(g)
        return self._zero

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        raise TypeError("field elements are unhashable (exact equality is gcd-based)")

    def sign(self) -> int:
        if self.is_zero():
            return 0
        alpha = self.field.alpha
        while True:
            s = self.rep.eval_interval(alpha.interval).sign()
            if s is not None and s != 0:
                return s
            alpha.refine(alpha.box.width / 16)

    def enclosure(self, width: Fraction) -> RatInterval:
        alpha = self.field.alpha
        iv = self.rep.eval_interval(alpha.interval)
        while iv.width > width:
            alpha.refine(alpha.box.width / 16)
            iv = self.rep.eval_interval(alpha.interval)
        return iv

    def to_fraction(self) -> Fraction:
        if self.rep.degree > 0:
            # a nonconstant representation may still be a rational value only
            # if the modulus is reducible; not needed in practice
            raise ValueError("field element is not represented by a constant")
        return self.rep.coeffs[0] if self.rep.coeffs else Q(0)

    def is_fraction(self) -> bool:
        return self.rep.degree <= 0

    def to_algebraic(self) -> AlgebraicNumber:
        """The value as a standalone root object."""
        if self.is_fraction():
            return algebraic_from_fraction(self.to_fraction())
        ann = annihilating_polynomial(self.field.modulus, self.rep)
        sf = int_squarefree([int(c) for c in ann.coeffs])
        iso = isolate_real_roots(Polynomial.from_int_list(sf))
        cands = list(iso.intervals)
        w = Q(1, 2**24)
        while True:
            box = self.enclosure(w)
            hits = [i for i, iv in enumerate(cands) if iv.overlaps(box)]
            if len(hits) == 1:
                from .rationals import ComplexBox

                i = hits[0]
                return AlgebraicNumber(
                    Polynomial.from_int_list(sf), i + 1, ComplexBox.from_real(cands[i]), True
                )
            cands = [refine_sign_change(sf, iv, iv.width / 16) for iv in cands]
            w = w / 2**8

    def __float__(self):
        return float(self.enclosure(Q(1, 2**40)).mid)

    def __repr__(self):
        return f"<{self.rep} at alpha~{float(self.field.alpha):.4f} ~ {float(self):.6g}>"


def _half_xgcd(a: Polynomial, m: Polynomial):
    """(g, s) with s*a = g (mod m); plain extended Euclid over the field Q."""
    r0, r1 = m, a % m
    s0, s1 = Polynomial(()), Polynomial.one()
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    return r0, s0


def field_value_sign(x) -> int:
    """Sign of a Fraction or FieldElement (shared helper for generic Sturm)."""
    if isinstance(x, FieldElement):
        return x.sign()
    return (x > 0) - (x < 0)
