"""Constructors for the rational-function families under study.

Parametrizations follow the displayed coefficient forms of the source
material verbatim (a separate test re-derives each from order conditions).
Members with algebraic parameters are built exactly over Q(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..kernel import AlgebraicNumber, Polynomial, Q, root_object
from ..kernel.numberfield import FieldElement, NumberField
from ..ratfun import RationalFunction, SdirkForm, order_of_accuracy, reduce

Param = Union[Fraction, int, FieldElement, AlgebraicNumber]


@dataclass(frozen=True)
class FamilyId:
    cls: str  # "PI" or "PI_HAT"
    s: int
    p: int

    def __post_init__(self):
        if self.cls not in ("PI", "PI_HAT"):
            raise ValueError("family class must be PI or PI_HAT")

    @property
    def n_params(self) -> int:
        return (2 * self.s - self.p) if self.cls == "PI" else (self.s + 1 - self.p)

    def __str__(self):
        hat = "^" if self.cls == "PI_HAT" else ""
        return f"Pi{hat}_{self.s}/{self.s},{self.p}"


class UnsupportedFamily(ValueError):
    pass


def _unify_params(params: Sequence[Param]):
    """Common coefficient domain: plain rationals, or one shared Q(alpha)."""
    field: Optional[NumberField] = None
    out = []
    for p in params:
        if isinstance(p, AlgebraicNumber):
            if p.is_rational():
                out.append(p.as_fraction())
                continue
            if field is None:
                field = NumberField(p)
                out.append(field.gen())
            else:
                raise ValueError("multiple algebraic parameters must share one field")
        elif isinstance(p, FieldElement):
            if field is None:
                field = p.field
            elif field is not p.field:
                raise ValueError("parameters from different number fields")
            out.append(p)
        else:
            out.append(Q(p))
    if field is not None:
        out = [field.from_fraction(c) if isinstance(c, Fraction) else c for c in out]
    return field, out


def _wrap(field: Optional[NumberField], q: Fraction):
    return q if field is None else field.from_fraction(q)


def pihat_numerator_coeffs(s: int, p: int, a, frees: Sequence, field) -> list:
    """Numerator coefficients of the general single-pole family member:
    determined through z^p by the order conditions, free above."""
    out = []
    for m in range(0, min(p, s) + 1):
        acc = _wrap(field, Q(0))
        for k in range(0, m + 1):
            if k > s:
                continue
            term = Q((-1) ** k * math.comb(s, k), math.factorial(m - k))
            acc = acc + a**k * term
        out.append(acc)
    for j, c in enumerate(frees):
        out.append(c)
    if len(out) != s + 1 and p < s:
        raise ValueError("wrong number of free parameters")
    return out


def make_family(fid: FamilyId, params: Sequence[Param]) -> RationalFunction:
    """Exact family member; verifies order >= p on construction."""
    field, ps = _unify_params(params)
    if len(ps) != fid.n_params:
        raise ValueError(f"{fid} takes {fid.n_params} parameter(s), got {len(ps)}")
    s, p = fid.s, fid.p

    if fid.cls == "PI_HAT":
        if not (2 <= p <= s + 1) or s < 2:
            raise UnsupportedFamily(f"{fid} is not constructible here")
        if p == s + 1:
            raise UnsupportedFamily(f"{fid} is a finite class; use finite_class_members")
        a, frees = ps[0], ps[1:]
        num = Polynomial(pihat_numerator_coeffs(s, p, a, frees, field))
        one = _wrap(field, Q(1))
        den = Polynomial((one, -a)) ** s
        f = RationalFunction(num, den, field)
    elif (fid.s, fid.p) == (2, 3):
        (a,) = ps
        f = RationalFunction(
            Polynomial((_wrap(field, Q(1)), a + 1, a / 2 + Q(1, 3))),
            Polynomial((_wrap(field, Q(1)), a, -a / 2 - Q(1, 6))),
            field,
        )
    elif (fid.s, fid.p) == (3, 5):
        (a,) = ps
        f = RationalFunction(
            Polynomial((_wrap(field, Q(1)), a * 12 + Q(3, 5), a * 6 + Q(3, 20), a + Q(1, 60))),
            Polynomial((_wrap(field, Q(1)), a * 12 - Q(2, 5), -a * 6 + Q(1, 20), a)),
            field,
        )
    elif (fid.s, fid.p) == (4, 7):
        (a,) = ps
        f = RationalFunction(
            Polynomial(
                (
                    _wrap(field, Q(1)),
                    a + 1,
                    a / 2 + Q(5, 14),
                    (a * 21 + 13) * Q(1, 210),
                    (a * 7 + 4) * Q(1, 840),
                )
            ),
            Polynomial(
                (
                    _wrap(field, Q(1)),
                    a,
                    (a * 7 + 2) * Q(-1, 14),
                    (a * 21 + 8) * Q(1, 210),
                    (a * 7 + 3) * Q(-1, 840),
                )
            ),
            field,
        )
    else:
        raise UnsupportedFamily(f"{fid} has no one-parameter constructor")

    got = order_of_accuracy(f, min(p, 2 * max(int(f.num.degree), int(f.den.degree)) + 2))
    if got < p:
        raise ValueError(f"constructed member of {fid} has order {got} < {p}")
    return f


def pade(s: int) -> RationalFunction:
    num = [
        Q(math.factorial(2 * s - j) * math.factorial(s), math.factorial(2 * s) * math.factorial(j) * math.factorial(s - j))
        for j in range(s + 1)
    ]
    den = [(-1) ** j * c for j, c in enumerate(num)]
    return RationalFunction.from_coeff_lists(num, den)


def repeated_midpoint_function(s: int) -> RationalFunction:
    num = Polynomial([Q(1), Q(1, 2 * s)]) ** s
    den = Polynomial([Q(1), Q(-1, 2 * s)]) ** s
    return RationalFunction(num, den)


# -- finite classes ----------------------------------------------------------

# closing-condition polynomials (lowest degree first): the p = s+1 member
# parameters a are their roots
def _closing_poly(s: int) -> Polynomial:
    cs = [Q((-1) ** k * math.comb(s, k), math.factorial(s + 1 - k)) for k in range(s + 1)]
    return Polynomial(cs).primitive()


# member ordering conventions, following the source's member numbering
_PIHAT_FINITE_A_INDEX = {
    2: [2, 1],  # psi_231 has the larger a, psi_232 the smaller
    3: [1, 2, 3],
    4: [4, 2, 1, 3],  # ordered by the quartic-coefficient index tuples
}


def finite_class_members(fid: FamilyId) -> list[RationalFunction]:
    """Complete member lists of the finite (q = 0) classes."""
    if fid.cls == "PI" and (fid.s, fid.p) in ((3, 6), (2, 4), (4, 8)):
        return [pade(fid.s)]
    if fid.cls == "PI_HAT" and fid.p == fid.s + 1 and 2 <= fid.s <= 4:
        closing = _closing_poly(fid.s)
        members = []
        for m in _PIHAT_FINITE_A_INDEX[fid.s]:
            alpha = root_object(list(closing.coeffs), m)
            field = NumberField(alpha)
            a = field.gen()
            num = Polynomial(pihat_numerator_coeffs(fid.s, fid.s, a, [], field))
            den = Polynomial((field.one(), -a)) ** fid.s
            f = RationalFunction(num, den, field)
            if order_of_accuracy(f) < fid.p:
                raise RuntimeError(f"finite member of {fid} misses order {fid.p}")
            members.append(f)
        return members
    raise UnsupportedFamily(f"{fid} is not a supported finite class")


def counterexample_psi32() -> RationalFunction:
    """The order-2 function with radius of absolute monotonicity above 2s."""
    return RationalFunction.from_coeff_lists(
        [1, Q(119, 269), Q(2289, 34970), Q(1246, 384649)],
        [1, Q(-150, 269), Q(8, 65), Q(-4, 327)],
    )


def p1_family(kind: str, s: int) -> RationalFunction:
    """The order-1 families with infinite radius: single-pole (HAT) and the
    distinct-poles sum (GENERAL)."""
    if kind == "HAT":
        if s < 1:
            raise ValueError("HAT needs s >= 1")
        base = Polynomial([Q(1), Q(-2)]) ** s
        num = base * (1 - Q(1, 2 * s)) + Polynomial([Q(1, 2 * s)])
        f = RationalFunction(num, base)
    elif kind == "GENERAL":
        if s < 2:
            raise ValueError("GENERAL needs s >= 2")
        den = Polynomial([Q(1)])
        for m in range(1, s + 1):
            den = den * Polynomial([Q(2) ** (1 - m), Q(-1)])
        num = den * Q(2**s - 2, 2**s + 1)
        scale = Q(3, 4**s - 1)
        for m in range(1, s + 1):
            term = Polynomial([Q(1)])
            for j in range(1, s + 1):
                if j != m:
                    term = term * Polynomial([Q(2) ** (1 - j), Q(-1)])
            num = num + term * scale
        f = RationalFunction(num, den)
    else:
        raise ValueError("kind must be HAT or GENERAL")
    f = reduce(f)
    if order_of_accuracy(f) != 1:
        raise RuntimeError("p=1 family member has unexpected order")
    if int(f.num.degree) != s or int(f.den.degree) != s:
        raise RuntimeError("p=1 family member has unexpected degree")
    return f


def optimal_member(fid: FamilyId) -> RationalFunction:
    """The member attaining the optimal radius in each class covered by the
    result tables (exact algebraic parameters)."""
    key = (fid.cls, fid.s, fid.p)
    if key == ("PI", 2, 2) or key == ("PI_HAT", 2, 2):
        return repeated_midpoint_function(2)
    if key == ("PI_HAT", 3, 2):
        return repeated_midpoint_function(3)
    if key == ("PI_HAT", 4, 2):
        return repeated_midpoint_function(4)
    if key == ("PI", 2, 3) or key == ("PI_HAT", 2, 3):
        # a* = -1 + 1/sqrt3; equals psi_232
        F = NumberField.quadratic(3)
        a = -1 + 1 / F.gen()
        return make_family(FamilyId("PI", 2, 3), [a])
    if key == ("PI", 2, 4):
        return pade(2)
    if key == ("PI", 3, 6):
        return pade(3)
    if key == ("PI", 4, 8):
        return pade(4)
    if key == ("PI", 3, 5):
        from .constants import named_constants

        a = named_constants()["a_35_star"].value
        return make_family(fid, [a])
    if key == ("PI", 4, 7):
        from .constants import named_constants

        a = named_constants()["a_47_star"].value
        return make_family(fid, [a])
    if key == ("PI_HAT", 3, 3):
        # a* = (2 - sqrt2)/4
        F = NumberField.quadratic(2)
        a = (2 - F.gen()) / 4
        return make_family(fid, [a])
    if key == ("PI_HAT", 4, 3):
        # a* = (5 - sqrt15)/10; a_4* pinned by the triple root of psi'
        F = NumberField.quadratic(15)
        r15 = F.gen()
        a = (5 - r15) / 10
        a4 = _pihat43_optimal_a4(F, a)
        return make_family(fid, [a, a4])
    if key == ("PI_HAT", 3, 4):
        return finite_class_members(FamilyId("PI_HAT", 3, 4))[0]
    if key == ("PI_HAT", 4, 5):
        return finite_class_members(FamilyId("PI_HAT", 4, 5))[2]
    if key == ("PI_HAT", 4, 4):
        from .constants import named_constants

        a = named_constants()["a_44_star"].value
        return make_family(fid, [a])
    raise UnsupportedFamily(f"no optimal member recorded for {fid}")


def _pihat43_optimal_a4(F: NumberField, a: FieldElement) -> FieldElement:
    """Free quartic coefficient making psi' vanish to third order at
    -(3 + sqrt15) (the structure of the optimal member)."""
    r15 = F.gen()
    x0 = -(3 + r15)
    # psi' numerator N(z; a4) = P'(z) Q(z) - s a ... depends linearly on a4
    one = F.one()
    den = Polynomial((one, -a))
    zero4 = F.zero()
    base = Polynomial(pihat_numerator_coeffs(4, 3, a, [zero4], F))
    bump = Polynomial((zero4, zero4, zero4, zero4, one))  # z^4

    def dnum(P: Polynomial) -> Polynomial:
        # numerator of (P/den^4)': P' den - 4 a ... = P' (1-az) + 4a P
        return P.derivative() * den + P * (4 * a)

    n0, n1 = dnum(base), dnum(bump)
    v0, v1 = n0(x0), n1(x0)
    if v1.is_zero():
        raise RuntimeError("degenerate a4 equation")
    return -(v0 / v1)
