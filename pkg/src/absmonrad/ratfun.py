"""Rational-function calculus: reduction, order of accuracy against exp,
exact derivatives, the closed-form derivative for single-pole (SDIRK-shaped)
functions, and certified partial fraction decomposition.

Functions carry either plain rational coefficients or coefficients in one
number field Q(alpha); all exact predicates (reduction, order conditions,
derivative identities) work in both settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

from .kernel import (
    AlgebraicNumber,
    ComplexBox,
    Polynomial,
    Q,
    RatInterval,
    isolate_real_roots,
)
from .kernel.algebraic import algebraic_from_fraction, from_defining_and_box
from .kernel.encroots import IntervalRootFinder
from .kernel.numberfield import FieldElement, NumberField
from .kernel.winding import isolate_upper_roots, refine_complex_root

Coeff = Union[Fraction, FieldElement]


class PoleAtOrigin(ValueError):
    pass


def _sign_of(c: Coeff) -> int:
    if isinstance(c, FieldElement):
        return c.sign()
    return (c > 0) - (c < 0)


def _enclose(c: Coeff, width: Fraction) -> RatInterval:
    if isinstance(c, FieldElement):
        return c.enclosure(width)
    return RatInterval.point(c)


def _as_fraction(c: Coeff) -> Fraction:
    if isinstance(c, FieldElement):
        return c.to_fraction()
    return c


class RationalFunction:
    """P/Q with exact coefficients; immutable value, memoized derivatives."""

    __slots__ = (
        "num",
        "den",
        "field",
        "normalized",
        "reduced",
        "cancelled",
        "_derivs",
        "_reduced_cache",
        "_pole_source",
        "_sdirk_cache",
    )

    def __init__(
        self,
        num: Polynomial,
        den: Polynomial,
        field: Optional[NumberField] = None,
        normalized: bool = False,
        reduced: bool = False,
        cancelled: bool = False,
    ):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        self.field = field
        self.normalized = normalized
        self.reduced = reduced
        self.cancelled = cancelled
        self._derivs = [self]
        self._reduced_cache = None
        self._pole_source = None
        self._sdirk_cache = False

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_coeff_lists(num, den, field: Optional[NumberField] = None) -> "RationalFunction":
        wrap = (lambda c: c) if field is None else (lambda c: c if isinstance(c, FieldElement) else field.from_fraction(Q(c)))
        if field is None:
            num = [Q(c) if not isinstance(c, Fraction) else c for c in num]
            den = [Q(c) if not isinstance(c, Fraction) else c for c in den]
        else:
            num = [wrap(c) for c in num]
            den = [wrap(c) for c in den]
        return RationalFunction(Polynomial(num), Polynomial(den), field)

    # -- basics -------------------------------------------------------------

    def is_polynomial(self) -> bool:
        f = reduce(self)
        return f.den.degree == 0

    def eval_exact(self, x) -> Coeff:
        """Exact value at a rational (or same-field) point off the poles."""
        if self.field is not None and isinstance(x, Fraction):
            x = self.field.from_fraction(x)
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def eval_interval(self, iv: RatInterval, coeff_width: Fraction = Q(1, 2**60)) -> RatInterval:
        n = _poly_interval(self.num, iv, coeff_width)
        d = _poly_interval(self.den, iv, coeff_width)
        return n / d

    def num_den_enclosures(self, width: Fraction) -> tuple[list[RatInterval], list[RatInterval]]:
        return (
            [_enclose(c, width) for c in self.num.coeffs],
            [_enclose(c, width) for c in self.den.coeffs],
        )

    def __repr__(self):
        return f"RationalFunction(({self.num})/({self.den}))"

    def format_text(self) -> str:
        if self.field is not None:
            raise ValueError("text format is defined for rational coefficients")
        ns = ",".join(str(c) for c in self.num.coeffs)
        ds = ",".join(str(c) for c in self.den.coeffs)
        return f"ratfun{{ num=[{ns}], den=[{ds}] }}"


def _poly_interval(p: Polynomial, iv: RatInterval, coeff_width: Fraction) -> RatInterval:
    acc = RatInterval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * iv + _enclose(c, coeff_width)
    return acc


# ---------------------------------------------------------------------------
# reduce / order of accuracy / Taylor
# ---------------------------------------------------------------------------


def reduce(f: RationalFunction) -> RationalFunction:
    """Cancel common factors, then scale so Q(0) = 1 when possible.

    Records whether a cancellation occurred: a common root drops the function
    into a smaller class, which several uniqueness arguments must notice.
    """
    if f.reduced:
        return f
    if f._reduced_cache is not None:
        return f._reduced_cache
    g = f.num.gcd(f.den)
    cancelled = g.degree >= 1
    num, den = (f.num.exact_div(g), f.den.exact_div(g)) if cancelled else (f.num, f.den)
    d0 = den.constant
    normalized = False
    if d0:
        num, den = num / d0, den / d0
        # normalized in the assumptions' sense: P(0) = Q(0) = 1
        normalized = bool(num.constant == 1)
    out = RationalFunction(num, den, f.field, normalized=normalized, reduced=True, cancelled=cancelled)
    f._reduced_cache = out
    return out


@dataclass
class TaylorPrefix:
    coefficients: list

    def __len__(self):
        return len(self.coefficients)


def taylor_prefix(f: RationalFunction, K: int) -> TaylorPrefix:
    """Exact Taylor coefficients c_0..c_K of f at 0 (requires Q(0) != 0)."""
    q0 = f.den.constant
    if not q0:
        raise PoleAtOrigin("Taylor expansion needs a nonzero denominator at 0")
    cs = []
    for k in range(K + 1):
        acc = f.num.coeff(k)
        for j in range(1, k + 1):
            acc = acc - f.den.coeff(j) * cs[k - j]
        cs.append(acc / q0)
    return TaylorPrefix(cs)


def order_of_accuracy(f: RationalFunction, max_p: Optional[int] = None) -> int:
    """Largest p <= max_p with the Taylor coefficients of f matching exp."""
    dmax = max(int(f.num.degree), int(f.den.degree))
    cap = 2 * dmax + 2
    if max_p is None:
        max_p = cap
    if max_p > cap:
        raise ValueError(f"max_p {max_p} above the sensible cap {cap}")
    ts = taylor_prefix(f, max_p + 1).coefficients
    p = -1
    for k, c in enumerate(ts):
        if not c == Q(1, math.factorial(k)):
            break
        p = k
    # matching c_0..c_p means the error is O(z^{p+1})
    return min(p, max_p)


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def kth_derivative(f: RationalFunction, k: int) -> RationalFunction:
    """Exact k-th derivative, reduced at every step; memoized on f."""
    if k < 0:
        raise ValueError("negative derivative order")
    derivs = f._derivs
    while len(derivs) <= k:
        g = derivs[-1]
        num = g.num.derivative() * g.den - g.num * g.den.derivative()
        den = g.den * g.den
        nxt = reduce(RationalFunction(num, den, f.field))
        derivs.append(nxt)
    return derivs[k]


@dataclass
class SdirkForm:
    """P(z) / (1 - a z)^s with a != 0; coefficients may live in Q(alpha)."""

    P: Polynomial
    a: Coeff
    s: int
    field: Optional[NumberField] = None

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if isinstance(self.a, FieldElement) and self.field is None:
            self.field = self.a.field

    def denominator(self) -> Polynomial:
        one = Q(1) if self.field is None else self.field.one()
        lin = Polynomial((one, -self.a))
        return lin**self.s

    def to_rational_function(self) -> RationalFunction:
        return RationalFunction(self.P, self.denominator(), self.field)

    def pole(self) -> Coeff:
        if isinstance(self.a, FieldElement):
            return 1 / self.a
        return 1 / self.a

    def format_text(self) -> str:
        if self.field is not None:
            raise ValueError("text format is defined for rational coefficients")
        ns = ",".join(str(c) for c in self.P.coeffs)
        return f"sdirk{{ num=[{ns}], a={self.a}, s={self.s} }}"


def pole_source(f: RationalFunction) -> "_PoleSource":
    """Cached refinable pole data for a reduced function."""
    if not f.reduced:
        raise ValueError("pole_source expects a reduced function")
    if f._pole_source is None:
        f._pole_source = _PoleSource(f)
    return f._pole_source


def sdirk_from_rational_function(f: RationalFunction) -> Optional[SdirkForm]:
    """Recognize P/(1-az)^s exactly (after reduction); None when not of that
    shape.  The denominator must be a perfect s-th power of a linear factor."""
    g = reduce(f)
    if g._sdirk_cache is not False:
        return g._sdirk_cache
    g._sdirk_cache = _sdirk_recognize(g)
    return g._sdirk_cache


def _sdirk_recognize(g: RationalFunction) -> Optional[SdirkForm]:
    dd = int(g.den.degree)
    if dd == 0:
        return None
    decomp = g.den.squarefree_decomposition()
    parts = [(fac, m) for fac, m in decomp if fac.degree >= 1]
    if len(parts) != 1 or parts[0][0].degree != 1:
        return None
    fac, m = parts[0]
    if m != dd:
        return None
    # den(0)=1 normalized: den = (1 - a z)^s with a = -den[1]/s
    a = -g.den.coeff(1) / m if m else None
    one = Q(1) if g.field is None else g.field.one()
    lin = Polynomial((one, -a))
    if not (lin**m == g.den):
        return None
    if not a:
        return None
    return SdirkForm(g.num, a, m, g.field)


def sdirk_derivative_sum_poly(f: SdirkForm, k: int) -> Polynomial:
    """S_k with psi^(k)(x) = a^k k! S_k(x) / Q(x)^(s+k), the finite sum over
    m = 0..min(k,s) with binomial weights."""
    s, a = f.s, f.a
    one = Q(1) if f.field is None else f.field.one()
    Qpoly = Polynomial((one, -a))
    acc = Polynomial(())
    Qm = Polynomial((one,))
    for m in range(0, min(k, s) + 1):
        w = Q(math.comb(s - 1 + k - m, s - 1), math.factorial(m))
        term = (f.P.derivative(m) * Qm * w) / a**m
        acc = acc + term
        Qm = Qm * Qpoly
    return acc


def sdirk_kth_derivative(f: SdirkForm, k: int, x) -> Coeff:
    """Exact psi^(k)(x) via the closed-form sum (x not the pole)."""
    if f.field is not None and isinstance(x, Fraction):
        x = f.field.from_fraction(x)
    one = Q(1) if f.field is None else f.field.one()
    Qx = Polynomial((one, -f.a))(x)
    if not Qx:
        raise ZeroDivisionError("evaluation at the pole")
    S = sdirk_derivative_sum_poly(f, k)
    return (f.a**k) * Q(math.factorial(k)) * S(x) / Qx ** (f.s + k)


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------


@dataclass
class PoleTerm:
    pole_box: ComplexBox
    order: int
    coefficients: list[ComplexBox]  # index j-1 -> coefficient of (pole-x)^-j
    is_real: bool
    is_positive_real: bool
    conjugate_of: Optional[int] = None  # index into PartialFractions.terms
    pole_algebraic: Optional[AlgebraicNumber] = None


@dataclass
class PartialFractions:
    constant: RatInterval
    terms: list[PoleTerm]
    dominant: Optional[int]  # index of the positive real pole of maximal order

    def dominant_term(self) -> PoleTerm:
        if self.dominant is None:
            raise ValueError("no positive real pole")
        return self.terms[self.dominant]


class _PoleSource:
    """Certified, refinable pole boxes with exact orders for a reduced f."""

    def __init__(self, f: RationalFunction):
        self.f = f
        den = f.den
        self.parts = []
        if f.field is None:
            for fac, m in den.squarefree_decomposition():
                if fac.degree < 1:
                    continue
                reals = isolate_real_roots(fac)
                for r in reals:
                    self.parts.append({"kind": "real", "root": r, "order": m})
                for b in isolate_upper_roots(fac):
                    self.parts.append(
                        {"kind": "upper", "box": b, "order": m, "poly": fac.squarefree_part()}
                    )
        else:
            for fac, m in den.squarefree_decomposition():
                if fac.degree < 1:
                    continue
                if fac.degree == 1:
                    alpha = -fac.coeffs[0] / fac.coeffs[1]
                    self.parts.append({"kind": "field", "value": alpha, "order": m})
                else:
                    deg = int(fac.degree)
                    coeffs = list(fac.coeffs)

                    def coeff_fn(width, _cs=coeffs):
                        return [ComplexBox.from_real(_enclose(c, width)) for c in _cs]

                    finder = IntervalRootFinder(deg, coeff_fn)
                    self.parts.append(
                        {"kind": "finder", "finder": finder, "order": m, "degree": deg}
                    )

    def pole_boxes(self, width: Fraction) -> list[dict]:
        """List of {box, order, is_real} with boxes of width <= width; only
        poles with nonnegative imaginary part are listed (the A+ set)."""
        out = []
        for part in self.parts:
            if part["kind"] == "real":
                r = part["root"].refine(width)
                out.append({"box": ComplexBox.from_real(r.interval), "order": part["order"], "is_real": True, "algebraic": r})
            elif part["kind"] == "field":
                iv = part["value"].enclosure(width)
                out.append({"box": ComplexBox.from_real(iv), "order": part["order"], "is_real": True, "field_value": part["value"]})
            elif part["kind"] == "upper":
                b = refine_complex_root(part["poly"], part["box"], width)
                part["box"] = b
                out.append({"box": b, "order": part["order"], "is_real": False})
            else:
                boxes = part["finder"].roots(width)
                # classify: boxes not meeting the real axis in conjugate pairs
                for b in boxes:
                    if b.im.lo > 0:
                        out.append({"box": b, "order": part["order"], "is_real": False})
                    elif b.im.contains_zero():
                        out.append({"box": b, "order": part["order"], "is_real": True})
                    # negative-imaginary boxes: the conjugates, skip
        return out


def partial_fractions(f: RationalFunction, width: Fraction) -> PartialFractions:
    """Certified decomposition f = c + sum_j c_{alpha,j} / (alpha - x)^j.

    Preconditions: f reduced, deg num <= deg den.  Coefficient boxes have
    width at most `width`; conjugate poles carry conjugate boxes.
    """
    f = reduce(f)
    if f.num.degree > f.den.degree:
        raise ValueError("partial fractions need deg num <= deg den")
    dn, dd = int(f.num.degree), int(f.den.degree)
    if dd == 0:
        raise ValueError("not a proper rational function (no poles)")
    if dn == dd:
        cval = f.num.leading / f.den.leading
        constant = _enclose(cval, width)
    else:
        constant = RatInterval.point(0)

    src = pole_source(f)
    w = width
    for _ in range(200):
        try:
            terms = _pf_terms(f, src, w, width)
            break
        except _NeedTighterPoles:
            w = w / 2**6
    else:
        raise RuntimeError("partial fractions failed to reach the target width")

    dominant = None
    for i, t in enumerate(terms):
        if t.is_positive_real:
            if dominant is None or t.order > terms[dominant].order:
                dominant = i
    return PartialFractions(constant, terms, dominant)


class _NeedTighterPoles(Exception):
    pass


def _pf_terms(f: RationalFunction, src: _PoleSource, pole_width: Fraction, width: Fraction) -> list[PoleTerm]:
    poles = src.pole_boxes(pole_width)
    coeff_width = min(pole_width, width)
    terms: list[PoleTerm] = []
    for p in poles:
        box, order = p["box"], p["order"]
        cs = _pf_coefficients(f, box, order, coeff_width)
        if any(c.width > width for c in cs):
            raise _NeedTighterPoles
        is_real = p["is_real"]
        positive = is_real and box.re.lo > 0
        terms.append(
            PoleTerm(
                pole_box=box,
                order=order,
                coefficients=cs,
                is_real=is_real,
                is_positive_real=positive,
                pole_algebraic=p.get("algebraic"),
            )
        )
    # append conjugates of the strictly-upper poles
    n0 = len(terms)
    for i in range(n0):
        t = terms[i]
        if not t.is_real:
            conj = PoleTerm(
                pole_box=ComplexBox(t.pole_box.re, -t.pole_box.im),
                order=t.order,
                coefficients=[ComplexBox(c.re, -c.im) for c in t.coefficients],
                is_real=False,
                is_positive_real=False,
                conjugate_of=i,
            )
            terms.append(conj)
    return terms


def _pf_coefficients(f: RationalFunction, pole: ComplexBox, order: int, width: Fraction) -> list[ComplexBox]:
    """Coefficients c_j of sum_j c_j/(alpha-x)^j at one pole, j = 1..order.

    Taylor-series route: with den(x) = sum_k d_k (x-a)^k and d_k enclosed, the
    analytic part E(x) = den(x)/(x-a)^m has E Taylor coefficients d_{m+i};
    G = (a-x)^m f = (-1)^m num/E, and c_j = (-1)^(m-j) G^{(m-j)}(a)/(m-j)!.
    """
    coeff_width = width
    # derivative enclosures of num and den at the pole
    num_series = []
    for i in range(order):
        val = _poly_box(f.num.derivative(i), pole, coeff_width)
        num_series.append(val * ComplexBox.point(Q(1, math.factorial(i))))
    den_series = []
    for i in range(order, 2 * order):
        val = _poly_box(f.den.derivative(i), pole, coeff_width)
        den_series.append(val * ComplexBox.point(Q(1, math.factorial(i))))
    # series of G*(-1)^m = num/E up to order-1
    if den_series[0].contains_zero():
        raise _NeedTighterPoles
    g = _series_div(num_series, den_series, order)
    # c_j = (-1)^j (num/E)_{m-j}
    out = []
    for j in range(1, order + 1):
        sign = -1 if j % 2 else 1
        out.append(g[order - j] * ComplexBox.point(sign))
    return out


def _poly_box(p: Polynomial, box: ComplexBox, coeff_width: Fraction) -> ComplexBox:
    acc = ComplexBox.point(0)
    for c in reversed(p.coeffs):
        acc = acc * box + ComplexBox.from_real(_enclose(c, coeff_width))
    return acc


def _series_div(num: list[ComplexBox], den: list[ComplexBox], n: int) -> list[ComplexBox]:
    out = []
    inv0 = den[0].recip()
    for i in range(n):
        acc = num[i] if i < len(num) else ComplexBox.point(0)
        for j in range(1, i + 1):
            dj = den[j] if j < len(den) else ComplexBox.point(0)
            acc = acc - dj * out[i - j]
        out.append(acc * inv0)
    return out


def check_recomposition(f: RationalFunction, pf: PartialFractions, n_samples: int = 20) -> bool:
    """The recomposed decomposition encloses exact values of f at rational
    sample points away from the poles (the PartialFractions invariant)."""
    f = reduce(f)
    samples = []
    k = 1
    while len(samples) < n_samples:
        x = Q(-3, 1) + Q(k, 7)
        k += 1
        try:
            exact = f.eval_exact(x)
        except ZeroDivisionError:
            continue
        enc = _enclose(exact, Q(1, 2**80))
        total = ComplexBox.from_real(pf.constant)
        ok = True
        for t in pf.terms:
            diff = t.pole_box - ComplexBox.point(x)
            for j, c in enumerate(t.coefficients, start=1):
                if diff.abs_sq().contains_zero():
                    ok = False
                    break
                total = total + c / diff**j
            if not ok:
                break
        if not ok:
            continue
        if not (total.re.lo <= enc.lo and enc.hi <= total.re.hi):
            return False
        samples.append(x)
    return True


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def parse_ratfun_text(text: str) -> Union[RationalFunction, SdirkForm]:
    """Parse `ratfun{ num=[...], den=[...] }` or `sdirk{ num=[...], a=..., s=... }`."""
    import re

    text = text.strip()
    m = re.fullmatch(r"ratfun\{\s*num=\[([^\]]*)\]\s*,\s*den=\[([^\]]*)\]\s*\}", text)
    if m:
        num = [Q(t) for t in m.group(1).split(",") if t.strip()]
        den = [Q(t) for t in m.group(2).split(",") if t.strip()]
        return RationalFunction(Polynomial(num), Polynomial(den))
    m = re.fullmatch(
        r"sdirk\{\s*num=\[([^\]]*)\]\s*,\s*a=([^,]+)\s*,\s*s=(\d+)\s*\}", text
    )
    if m:
        num = [Q(t) for t in m.group(1).split(",") if t.strip()]
        a_text = m.group(2).strip()
        s = int(m.group(3))
        if a_text.startswith("root("):
            from .kernel import parse_root

            alpha = parse_root(a_text)
            field = NumberField(alpha)
            a = field.gen()
            return SdirkForm(Polynomial([field.from_fraction(c) for c in num]), a, s, field)
        return SdirkForm(Polynomial(num), Q(a_text), s)
    raise ValueError(f"unrecognized function format: {text[:60]!r}")
