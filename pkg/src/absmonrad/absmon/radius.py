"""Core machinery: the pole-geometry bound B, certified absolute
monotonicity at a point, and the certified radius bracket.

B is computed from certified pole enclosures: for every competing pole the
half-line on which the positive real pole is strictly nearer is cut at the
equidistance point, and -B is the largest left cut.  Certification at a point
combines finitely many exact (or box) derivative sign checks with a dominance
tail bound: for single-pole denominators the closed-form derivative sum is a
polynomial in the order k and positivity for all large k is a shifted-basis
coefficient check; otherwise the partial-fraction ratio argument applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

from ..kernel import (
    AlgebraicNumber,
    ComplexBox,
    Polynomial,
    Q,
    RatInterval,
    isolate_real_roots,
)
from ..kernel.numberfield import FieldElement
from ..kernel.resultants import annihilating_polynomial, resultant_eliminate
from ..kernel.sturm import count_roots_halfopen, int_squarefree, sturm_chain
from ..ratfun import (
    RationalFunction,
    SdirkForm,
    kth_derivative,
    partial_fractions,
    pole_source,
    reduce,
    sdirk_derivative_sum_poly,
    sdirk_from_rational_function,
)

PointLike = Union[Fraction, AlgebraicNumber]


class Inconclusive(RuntimeError):
    """Raised when a certification cannot be decided at the precision cap;
    never silently resolved."""


PRECISION_CAP_DEFAULT = 14  # refinement-escalation rounds
K0_CAP = 500


# ---------------------------------------------------------------------------
# pole sets and the B bound
# ---------------------------------------------------------------------------


@dataclass
class PoleSet:
    """Poles with nonnegative imaginary part, refinable enclosures, exact
    orders; complete for the reduced denominator."""

    f: RationalFunction
    source: object
    width: Fraction

    @staticmethod
    def of(f: RationalFunction, width: Fraction = Q(1, 2**40)) -> "PoleSet":
        f = reduce(f)
        return PoleSet(f, pole_source(f), width)

    def entries(self, width: Optional[Fraction] = None) -> list[dict]:
        return self.source.pole_boxes(width or self.width)

    def completeness_ok(self) -> bool:
        total = 0
        for e in self.entries():
            total += e["order"] * (1 if e["is_real"] else 2)
        return total == int(self.f.den.degree)

    def positive_real_poles(self) -> list[dict]:
        # a pole exactly at 0 is impossible for den(0) = 1, so refinement
        # always separates real pole boxes from the origin
        for _ in range(PRECISION_CAP_DEFAULT):
            entries = self.entries()
            if all(not e["box"].re.contains_zero() for e in entries if e["is_real"]):
                return [e for e in entries if e["is_real"] and e["box"].re.lo > 0]
            self.width = self.width / 2**8
        raise Inconclusive("real pole sign undecided at precision cap")


@dataclass
class BRadius:
    kind: str  # "zero" | "finite" | "infinite"
    value: Optional[RatInterval] = None
    binding: Optional[dict] = None  # pole entry achieving the cut

    def upper(self) -> Fraction:
        if self.kind != "finite":
            raise ValueError("no finite upper bound")
        return self.value.hi


def compute_B(f: RationalFunction, width: Fraction = Q(1, 10**12)) -> BRadius:
    """The pole-geometry upper bound for R, as a refinable enclosure."""
    f = reduce(f)
    if not f.normalized:
        raise ValueError("compute_B needs the normalized form (P(0)=Q(0)=1)")
    if f.den.degree == 0:
        raise ValueError("compute_B is undefined for polynomials")
    src = pole_source(f)
    w = Q(1, 2**24)
    rounds = 0
    while True:
        rounds += 1
        if rounds > PRECISION_CAP_DEFAULT + 20:
            raise Inconclusive("pole geometry undecided at precision cap")
        poles = src.pole_boxes(w)
        reals = [p for p in poles if p["is_real"]]
        pos = [p for p in reals if p["box"].re.lo > 0]
        und = [p for p in reals if p["box"].re.contains_zero()]
        if und:
            w = w / 2**8
            continue
        if not pos:
            return BRadius("zero")
        # alpha0: smallest positive real pole
        pos.sort(key=lambda p: p["box"].re.lo)
        if len(pos) > 1 and pos[0]["box"].re.overlaps(pos[1]["box"].re):
            w = w / 2**8
            continue
        a0 = pos[0]
        a0iv = a0["box"].re
        others = [p for p in poles if p is not a0]
        # 0 in I(alpha0): every other pole strictly farther from the origin
        ok0 = True
        for p in others:
            d2 = p["box"].abs_sq()
            if not (a0iv.sq().certainly_lt(d2)):
                if d2.certainly_lt(a0iv.sq()):
                    return BRadius("zero")
                ok0 = False
                break
        if not ok0:
            w = w / 2**8
            continue
        # left constraints: poles with real part certainly below alpha0
        cuts = []
        undecided = False
        binding = None
        for p in others:
            re = p["box"].re
            if re.certainly_lt(a0iv):
                num = a0iv.sq() - p["box"].abs_sq()
                den = (a0iv - re) * 2
                cuts.append((num / den, p))
            elif a0iv.certainly_lt(re):
                continue  # right-side pole: bounds sup I only
            else:
                # real parts may coincide exactly (no constraint then)
                if _re_equals_alpha0_exact(f, a0, p):
                    continue
                undecided = True
                break
        if undecided:
            w = w / 2**8
            continue
        if not cuts:
            return BRadius("infinite")
        lo = max(c.lo for c, _ in cuts)
        hi = max(c.hi for c, _ in cuts)
        val = RatInterval(-hi, -lo)
        for c, p in cuts:
            if c.hi >= lo:
                binding = p
        if val.width <= width:
            if val.lo < 0:
                # the cut is non-negative by the 0-in-I check; clamp rounding
                val = RatInterval(max(val.lo, Q(0)), max(val.hi, Q(0)))
            return BRadius("finite", val, binding)
        w = w / 2**8


def _re_equals_alpha0_exact(f: RationalFunction, a0: dict, p: dict) -> bool:
    """Exact test whether a complex pole has real part equal to the real pole
    alpha0 (the equal-real-part configuration imposes no half-line cut).

    Implemented for rational cubic denominators: after dividing out alpha0,
    the conjugate pair's sum lives in Q(alpha0) and the equality is a field
    zero test."""
    if f.field is not None or p["is_real"]:
        return False
    den = f.den
    sf = den.squarefree_part()
    if sf.degree != 3 or "algebraic" not in a0:
        return False
    alpha = a0["algebraic"]
    from ..kernel.numberfield import NumberField

    F = NumberField(alpha)
    t = F.gen()
    coeffs = [F.from_fraction(c) for c in sf.coeffs]
    q, r = Polynomial(coeffs).divmod(Polynomial((-t, F.one())))
    if not all(c.is_zero() for c in r.coeffs):
        return False
    # q = c2 z^2 + c1 z + c0; pair sum = -c1/c2
    s = -(q.coeff(1) / q.coeff(2))
    return (s - 2 * t).is_zero()


# ---------------------------------------------------------------------------
# derivative-root upper bounds
# ---------------------------------------------------------------------------


@dataclass
class RootWitness:
    ell: int
    enclosure: RatInterval  # contains a root of psi^(ell), inside [-r, 0]
    multiplicity: int = 1

    def radius_upper(self) -> Fraction:
        return -self.enclosure.lo


def _no_pole_in(f: RationalFunction, lo: Fraction, hi: Fraction) -> bool:
    if f.field is None:
        ints = int_squarefree([int(c) for c in f.den.primitive().coeffs])
        if len(ints) <= 1:
            return True
        ch = sturm_chain(ints)
        if count_roots_halfopen(ch, lo, hi) > 0:
            return False
        from ..kernel.polynomials import int_eval_homogeneous

        return int_eval_homogeneous(ints, lo.numerator, lo.denominator) != 0
    src = pole_source(f)
    w = Q(1, 2**40)
    for _ in range(PRECISION_CAP_DEFAULT):
        clear = True
        for p in src.pole_boxes(w):
            if p["is_real"] and not (p["box"].re.hi < lo or p["box"].re.lo > hi):
                clear = False
                break
        if clear:
            return True
        w = w / 2**10
    return False


def derivative_root_bound(
    f: RationalFunction, r: Fraction, k_max: int
) -> Optional[RootWitness]:
    """Scan ell = 0..k_max for a certified root of psi^(ell) in [-r, 0];
    return the witness giving the smallest upper bound -x, or None."""
    f = reduce(f)
    if not _no_pole_in(f, -r, Q(0)):
        raise ValueError("pole inside [-r, 0]")
    best: Optional[RootWitness] = None
    form = sdirk_from_rational_function(f)
    pf_fast = _all_positive_simple_pf(f) if form is None else None
    for ell in range(k_max + 1):
        if form is not None:
            roots = _sdirk_sum_roots_in(form, ell, -r, Q(0))
        elif pf_fast is not None:
            roots = []  # all-positive partial fractions: no negative-axis roots
            if ell == 0 and pf_fast is False:
                roots = _numerator_roots_in(f, ell, -r, Q(0))
        else:
            roots = _numerator_roots_in(f, ell, -r, Q(0))
        for iv in roots:
            w = RootWitness(ell, iv, 1)
            if best is None or w.radius_upper() < best.radius_upper():
                best = w
        if pf_fast:
            break
    if best is not None and f.field is None:
        best = _attach_multiplicity(f, best)
    return best


def _attach_multiplicity(f: RationalFunction, w: RootWitness) -> RootWitness:
    g = kth_derivative(f, w.ell)
    iso = isolate_real_roots(g.num, RatInterval(w.enclosure.lo, w.enclosure.hi))
    for r in iso:
        if r.box.re.overlaps(w.enclosure):
            return RootWitness(w.ell, w.enclosure, r.multiplicity)
    return w


def _all_positive_simple_pf(f: RationalFunction) -> Optional[bool]:
    """True when f decomposes into simple positive real poles with positive
    residues and a constant (then every derivative is positive on the negative
    axis); None when the structure does not apply."""
    if f.field is not None:
        return None
    try:
        pf = partial_fractions(f, Q(1, 2**30))
    except Exception:
        return None
    for t in pf.terms:
        if not t.is_real or t.order != 1 or not t.is_positive_real:
            return None
        if not (t.coefficients[0].re.lo > 0):
            return None
    if pf.constant.lo < 0:
        return None
    return True


def _numerator_roots_in(f: RationalFunction, ell: int, lo: Fraction, hi: Fraction) -> list[RatInterval]:
    g = kth_derivative(f, ell)
    if g.num.degree > 60:
        raise Inconclusive("derivative degree beyond the exact-kernel cap")
    if f.field is None:
        iso = isolate_real_roots(g.num, RatInterval(lo, hi))
        return [r.box.re for r in iso]
    return _field_poly_roots_in(g.num, lo, hi)


def _sdirk_sum_roots_in(form: SdirkForm, ell: int, lo: Fraction, hi: Fraction) -> list[RatInterval]:
    S = sdirk_derivative_sum_poly(form, ell)
    if S.is_zero():
        return []
    if form.field is None:
        iso = isolate_real_roots(S, RatInterval(lo, hi))
        return [r.box.re for r in iso]
    return _field_poly_roots_in(S, lo, hi)


def _fe_sign(v) -> int:
    return v.sign() if isinstance(v, FieldElement) else (v > 0) - (v < 0)


def _field_poly_roots_in(p: Polynomial, lo: Fraction, hi: Fraction, width: Fraction = Q(1, 2**48)) -> list[RatInterval]:
    """Roots of a number-field-coefficient polynomial in [lo, hi], via the
    generic Sturm chain with exact field signs."""
    from ..kernel.numberfield import field_value_sign
    from ..kernel.sturm import count_roots_generic, sturm_chain_generic

    # drop exactly-zero leading coefficients first
    cs = list(p.coeffs)
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) <= 1:
        return []
    p = Polynomial(cs)
    chain = sturm_chain_generic(p)

    def count(a, b):
        return count_roots_generic(chain, a, b, field_value_sign)

    out = []
    if _fe_sign(p(lo)) == 0:
        out.append(RatInterval(lo, lo))

    # stack of (a, b, roots in (a, b]) with p(a) != 0
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        sb = _fe_sign(p(b))
        if n == 1 and sb == 0:
            out.append(RatInterval(b, b))
            continue
        if n == 1 and (b - a) <= width:
            sa = _fe_sign(p(a))
            if sa * sb < 0:
                out.append(RatInterval(a, b))
                continue
        m = (a + b) / 2
        sm = _fe_sign(p(m))
        if sm == 0:
            out.append(RatInterval(m, m))
            # nudge the cut off the root; verify no root slips through the gap
            eps = (b - a) / 2**10
            while True:
                m1, m2 = m - eps, m + eps
                if m1 > a and m2 < b and _fe_sign(p(m1)) != 0 and _fe_sign(p(m2)) != 0:
                    n1, n2 = count(a, m1), count(m2, b)
                    if n1 + n2 == n - 1:
                        stack.append((a, m1, n1))
                        stack.append((m2, b, n2))
                        break
                eps = eps / 4
                if eps == 0:
                    raise Inconclusive("field root isolation stalled")
            continue
        nl = count(a, m)
        stack.append((a, m, nl))
        stack.append((m, b, n - nl))
    out.sort(key=lambda iv: iv.lo)
    return out


# ---------------------------------------------------------------------------
# certified absolute monotonicity at a point
# ---------------------------------------------------------------------------


@dataclass
class FiniteCheck:
    k: int
    kind: str  # "exact" | "box"
    lower: Fraction  # certified lower bound of psi^(k)(x); >= 0 when certified


@dataclass
class SdirkTailRecord:
    K0: int
    shifted_lower: list[Fraction]  # certified lower bounds of T(K0+u) coefficients


@dataclass
class PfTailRecord:
    K0: int
    c0_lower: Fraction
    others: list[tuple[Fraction, Fraction, bool]]  # (|c| upper, ratio upper, unit_exact)

    def inequality_holds(self) -> bool:
        total = Q(0)
        for cu, ru, unit in self.others:
            r = Q(1) if unit else min(ru, Q(1))
            total += cu * r ** (self.K0 + 1)
        return total < self.c0_lower


@dataclass
class AbsMonCertificate:
    x_repr: str
    path: str  # "sdirk" | "pf" | "positive-pf"
    finite_checks: list[FiniteCheck]
    tail: Union[SdirkTailRecord, PfTailRecord, None]
    pole_free: str

    def replay_arithmetic(self) -> bool:
        """Re-verify every stored inequality (pure rational arithmetic)."""
        for fc in self.finite_checks:
            if fc.lower < 0:
                return False
        if isinstance(self.tail, SdirkTailRecord):
            return all(c >= 0 for c in self.tail.shifted_lower)
        if isinstance(self.tail, PfTailRecord):
            return self.tail.inequality_holds() and self.tail.c0_lower > 0
        return self.path == "positive-pf"

    def to_json(self) -> dict:
        tail: Optional[dict] = None
        if isinstance(self.tail, SdirkTailRecord):
            tail = {"kind": "sdirk", "K0": self.tail.K0, "shifted_lower": [str(c) for c in self.tail.shifted_lower]}
        elif isinstance(self.tail, PfTailRecord):
            tail = {
                "kind": "pf",
                "K0": self.tail.K0,
                "c0_lower": str(self.tail.c0_lower),
                "others": [[str(a), str(b), u] for a, b, u in self.tail.others],
            }
        return {
            "x": self.x_repr,
            "path": self.path,
            "finite_checks": [[fc.k, fc.kind, str(fc.lower)] for fc in self.finite_checks],
            "tail": tail,
            "pole_free": self.pole_free,
        }


def certificate_from_json(d: dict) -> AbsMonCertificate:
    checks = [FiniteCheck(k, kind, Q(v)) for k, kind, v in d["finite_checks"]]
    tail = None
    td = d.get("tail")
    if td and td["kind"] == "sdirk":
        tail = SdirkTailRecord(td["K0"], [Q(c) for c in td["shifted_lower"]])
    elif td and td["kind"] == "pf":
        tail = PfTailRecord(td["K0"], Q(td["c0_lower"]), [(Q(a), Q(b), u) for a, b, u in td["others"]])
    return AbsMonCertificate(d["x"], d["path"], checks, tail, d["pole_free"])


@dataclass
class Refutation:
    k: int
    upper: Fraction  # certified upper bound of psi^(k)(x), < 0
    x_repr: str


class PoleInWindow(Exception):
    def __init__(self, lo: Fraction):
        super().__init__(f"pole inside [{lo}, 0]")
        self.lo = lo


CertifyResult = Union[AbsMonCertificate, Refutation]


def _x_interval(x: PointLike) -> RatInterval:
    if isinstance(x, AlgebraicNumber):
        return x.box.re
    return RatInterval.point(Q(x))


def _x_repr(x: PointLike) -> str:
    if isinstance(x, AlgebraicNumber):
        return x.serialize()
    return str(Q(x))


def certify_absmon_at(
    f: RationalFunction,
    x: PointLike,
    k_scan_cap: int = 400,
    precision_rounds: int = PRECISION_CAP_DEFAULT,
) -> CertifyResult:
    """Certificate that psi^(k)(x) >= 0 for every k >= 0, or a refutation
    witness (a k with a certified negative value).  Raises Inconclusive at the
    precision cap, never guesses."""
    f = reduce(f)
    xiv = _x_interval(x)
    if not xiv.hi < 0:
        raise ValueError("certification point must be negative")
    if not _no_pole_in(f, xiv.lo, Q(0)):
        raise PoleInWindow(xiv.lo)

    form = sdirk_from_rational_function(f)
    if form is not None:
        return _certify_sdirk(f, form, x, k_scan_cap, precision_rounds)
    if _all_positive_simple_pf(f):
        return AbsMonCertificate(
            _x_repr(x), "positive-pf", [], None,
            f"no real pole in [{xiv.lo}, 0]; all residues positive",
        )
    return _certify_pf(f, x, k_scan_cap, precision_rounds)


def _binom_poly_in_k(shift: int, s: int) -> Polynomial:
    """binom(s-1+k-shift, s-1) as a polynomial in k (degree s-1)."""
    out = Polynomial((Q(1),))
    for j in range(1, s):
        out = out * Polynomial((Q(j - shift), Q(1)))
    return out / Q(math.factorial(s - 1))


def _sdirk_T_poly(form: SdirkForm, x) -> Polynomial:
    """T with psi^(k)(x) = a^k k! T(k) / Q(x)^(s+k) for k >= 1: polynomial in
    k with exact (rational or field) coefficients.

    Valid only for k >= 1: the polynomial product matching binom(s-1+k-m,s-1)
    agrees with the combinatorial value except at (k, m) = (0, s), so k = 0
    must be checked directly from P(x)/Q(x)^s."""
    s = form.s
    if form.field is not None and isinstance(x, Fraction):
        x = form.field.from_fraction(x)
    one = Q(1) if form.field is None else form.field.one()
    Qx = Polynomial((one, -form.a))(x)
    acc = Polynomial(())
    for m in range(0, s + 1):
        v = form.P.derivative(m)(x) * (Qx / form.a) ** m / Q(math.factorial(m))
        acc = acc + _binom_poly_in_k(m, s) * v
    return acc


def _shifted_coeffs(T: Polynomial, K0: int) -> list:
    return list(T.shift(Q(K0)).coeffs)


def _certify_sdirk(f, form: SdirkForm, x: PointLike, k_scan_cap, precision_rounds) -> CertifyResult:
    a_sign = _fe_sign(form.a)
    if isinstance(x, AlgebraicNumber):
        return _certify_sdirk_box(f, form, x, k_scan_cap, precision_rounds)
    xq = x if isinstance(x, (Fraction, FieldElement)) else Q(x)
    if form.field is not None and isinstance(xq, Fraction):
        xq = form.field.from_fraction(xq)
    T = _sdirk_T_poly(form, xq)
    one = Q(1) if form.field is None else form.field.one()
    Qx = Polynomial((one, -form.a))(xq)
    if _fe_sign(Qx) <= 0:
        raise PoleInWindow(_x_interval(x).lo)

    def psi_sign(k: int) -> int:
        if k == 0:
            return _fe_sign(form.P(xq))  # Q(x)^s > 0 was checked above
        sv = _fe_sign(T(Q(k)))
        sa = 1 if a_sign > 0 else (1 if k % 2 == 0 else -1)
        return sv * sa

    if a_sign < 0:
        # no positive real pole: a refutation must exist; scan for it
        for k in range(0, k_scan_cap + 1):
            if psi_sign(k) < 0:
                return Refutation(k, Q(-1), _x_repr(x))
        raise Inconclusive("no negative derivative found below the scan cap")

    # a > 0: T(k) >= 0 for all k needed; leading coefficient decides the tail
    while not T.is_zero() and _fe_sign(T.leading) == 0:
        T = Polynomial(T.coeffs[:-1])
    if T.is_zero():
        return AbsMonCertificate(_x_repr(x), "sdirk", [], SdirkTailRecord(0, []), "single positive pole")
    if _fe_sign(T.leading) < 0:
        k = 1
        while k <= 2**40:
            if psi_sign(k) < 0:
                return Refutation(k, Q(-1), _x_repr(x))
            k *= 2
        raise Inconclusive("negative leading coefficient but no explicit witness found")

    if psi_sign(0) < 0:
        return Refutation(0, Q(-1), _x_repr(x))
    K0 = 1
    while K0 <= K0_CAP:
        shifted = _shifted_coeffs(T, K0)
        if all(_fe_sign(c) >= 0 for c in shifted):
            checks = [FiniteCheck(0, "exact", Q(0))]
            for k in range(1, K0):
                v = T(Q(k))
                s = _fe_sign(v)
                if s < 0:
                    return Refutation(k, Q(-1), _x_repr(x))
                lower = v if isinstance(v, Fraction) else v.enclosure(Q(1, 2**30)).lo
                checks.append(FiniteCheck(k, "exact", max(lower, Q(0)) if s >= 0 else lower))
            lows = []
            for c in shifted:
                lows.append(c if isinstance(c, Fraction) else c.enclosure(Q(1, 2**30)).lo)
                if lows[-1] < 0:
                    lows[-1] = Q(0)  # certified nonnegative by exact sign above
            return AbsMonCertificate(
                _x_repr(x), "sdirk", checks, SdirkTailRecord(K0, lows),
                "single positive real pole; window pole-free",
            )
        # some shifted coefficient negative: either move K0 up or refute
        K0 = K0 * 2
        for k in range(min(K0, 64)):
            if psi_sign(k) < 0:
                return Refutation(k, Q(-1), _x_repr(x))
    raise Inconclusive("shifted-basis positivity not reached below the K0 cap")


def _certify_sdirk_box(f, form: SdirkForm, x: AlgebraicNumber, k_scan_cap, precision_rounds) -> CertifyResult:
    if _fe_sign(form.a) <= 0:
        raise Inconclusive("box path implemented for positive pole parameters")
    s = form.s
    coeff_w = Q(1, 2**60)
    for _ in range(precision_rounds):
        xiv = x.box.re
        from ..ratfun import _enclose

        Qx = RatInterval.point(1) - _enclose(form.a, coeff_w) * xiv
        if not (Qx.lo > 0):
            raise PoleInWindow(xiv.lo)
        # T(k) with interval coefficients
        a_iv = _enclose(form.a, coeff_w)
        Tcoeffs = [RatInterval.point(0)] * s
        bad = False
        for m in range(0, s + 1):
            pm = _poly_iv(form.P.derivative(m), xiv, coeff_w)
            v = pm * (Qx / a_iv) ** m * RatInterval.point(Q(1, math.factorial(m)))
            B = _binom_poly_in_k(m, s)
            for i, bc in enumerate(B.coeffs):
                Tcoeffs[i] = Tcoeffs[i] + v * RatInterval.point(bc)
        # leading sign; the T form is valid only for k >= 1
        K0 = 1
        certified = None
        while K0 <= K0_CAP:
            sh = _shift_iv_poly(Tcoeffs, K0)
            if all(c.lo >= 0 for c in sh):
                certified = K0
                break
            K0 = K0 * 2
        if certified is not None:
            checks = []
            for k in range(certified):
                if k == 0:
                    val = _poly_iv(form.P, xiv, coeff_w)
                else:
                    val = _eval_iv_poly(Tcoeffs, Q(k))
                if val.lo < 0:
                    if val.hi < 0:
                        return Refutation(k, val.hi, _x_repr(x))
                    sgn = _exact_sdirk_sign_fallback(f, form, x, k)
                    if sgn is None:
                        break
                    if sgn < 0:
                        return Refutation(k, Q(-1), _x_repr(x))
                    checks.append(FiniteCheck(k, "exact", Q(0)))
                else:
                    checks.append(FiniteCheck(k, "box", val.lo))
            else:
                return AbsMonCertificate(
                    _x_repr(x), "sdirk", checks, SdirkTailRecord(certified, [c.lo for c in _shift_iv_poly(Tcoeffs, certified)]),
                    "single positive real pole; window pole-free",
                )
        # refine and retry
        x.refine(x.box.width / 2**10)
        coeff_w = coeff_w / 2**10
    raise Inconclusive("sdirk box certification exceeded precision rounds")


def _exact_sdirk_sign_fallback(f, form: SdirkForm, x: AlgebraicNumber, k: int):
    """Exact sign of psi^(k)(x) for rational f at an algebraic point."""
    if f.field is not None:
        return None
    g = kth_derivative(f, k)
    if x.is_root_of(g.num):
        return 0
    iv = x.box.re
    for _ in range(60):
        v = g.num.eval_interval(iv)
        s = v.sign()
        if s is not None and s != 0:
            den_sign = g.den.eval_interval(iv).sign()
            if den_sign in (None, 0):
                x.refine(iv.width / 2**6)
                iv = x.box.re
                continue
            return s * den_sign
        x.refine(iv.width / 2**6)
        iv = x.box.re
    return None


def _poly_iv(p: Polynomial, iv: RatInterval, coeff_w: Fraction) -> RatInterval:
    from ..ratfun import _enclose

    acc = RatInterval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * iv + _enclose(c, coeff_w)
    return acc


def _eval_iv_poly(coeffs: list[RatInterval], k: Fraction) -> RatInterval:
    acc = RatInterval.point(0)
    for c in reversed(coeffs):
        acc = acc * RatInterval.point(k) + c
    return acc


def _shift_iv_poly(coeffs: list[RatInterval], K0: int) -> list[RatInterval]:
    # interval coefficients of T(K0 + u)
    out = [RatInterval.point(0)] * len(coeffs)
    for i, c in enumerate(coeffs):
        for j in range(i + 1):
            out[j] = out[j] + c * RatInterval.point(Q(math.comb(i, j) * K0 ** (i - j)))
    return out


def _ratio_sq(pole_box: ComplexBox, a0_box: ComplexBox, xiv: RatInterval) -> RatInterval:
    xb = ComplexBox.from_real(xiv)
    num = (a0_box - xb).abs_sq()
    den = (pole_box - xb).abs_sq()
    return num / den


def _equidistance_poly_cubic(f: RationalFunction) -> Optional[Polynomial]:
    """For a rational cubic denominator: rational polynomial whose roots
    include every point equidistant from a real root u of the denominator and
    the conjugate pair remaining after dividing u out.

    With sf = c3 z^3 + c2 z^2 + c1 z + c0 and sf/(z-u) = c3 z^2 + (c2+c3 u) z
    + (c1+c2 u+c3 u^2), the equidistance condition (u-X)^2 = |pair - X|^2
    collapses (the u^2 terms cancel) to the u-linear relation
    -(3 c3 X + c2) u - (c1 + c2 X) = 0, eliminated against sf(u) = 0."""
    if f.field is not None:
        return None
    sf = f.den.squarefree_part().primitive()
    if sf.degree != 3:
        return None
    c1, c2, c3 = sf.coeff(1), sf.coeff(2), sf.coeff(3)
    g0 = Polynomial((-c1, -c2))  # constant-in-u coefficient, polynomial in X
    g1 = Polynomial((-c2, -3 * c3))  # u-coefficient, polynomial in X
    return resultant_eliminate(sf, [g0, g1]).primitive()


def _pf_exact_unit_ratio(f: RationalFunction, x: PointLike, term, dom) -> Optional[bool]:
    """Exact decision of |alpha0 - x| == |alpha - x| when boxes straddle.

    Real competitor: x must be the exact midpoint (checked through the
    root-sums polynomial).  Complex pair with a cubic denominator: x must be a
    root of the eliminated equidistance polynomial."""
    if f.field is not None:
        return None
    xalg = x if isinstance(x, AlgebraicNumber) else None
    if term.is_real:
        # midpoint test: 2x must be the sum alpha0 + alpha
        from ..kernel.resultants import root_sums_polynomial

        sf = f.den.squarefree_part().primitive()
        S = root_sums_polynomial(sf)
        if xalg is None:
            from ..kernel.polynomials import int_eval_homogeneous

            xx = Q(x) * 2
            si = [int(c) for c in S.primitive().coeffs]
            if int_eval_homogeneous(si, xx.numerator, xx.denominator) != 0:
                return None  # not a midpoint of any pair: refinement will decide
            mid = (dom.pole_box.re + term.pole_box.re) * Q(1, 2)
            return mid.contains(Q(x))
        return None
    phi = _equidistance_poly_cubic(f)
    if phi is None:
        return None
    if xalg is not None:
        if xalg.is_root_of(phi):
            return True
        return None
    xx = Q(x)
    from ..kernel.polynomials import int_eval_homogeneous

    pi = [int(c) for c in phi.primitive().coeffs]
    if int_eval_homogeneous(pi, xx.numerator, xx.denominator) == 0:
        return True
    return None


def _certify_pf(f: RationalFunction, x: PointLike, k_scan_cap, precision_rounds) -> CertifyResult:
    w = Q(1, 2**40)
    for _ in range(precision_rounds):
        pf = partial_fractions(f, w)
        if pf.dominant is None:
            ref = _scan_negative(f, pf, x, k_scan_cap)
            if ref is not None:
                return ref
            raise Inconclusive("no positive real pole and no explicit witness found")
        dom = pf.dominant_term()
        if any(t.order != 1 for t in pf.terms):
            raise Inconclusive("tail bound implemented for simple poles and single-pole forms")
        if isinstance(x, AlgebraicNumber):
            x.refine(min(x.box.width, w))
        xiv = _x_interval(x)
        c0 = dom.coefficients[0].re
        if c0.hi < 0:
            ref = _scan_negative(f, pf, x, k_scan_cap)
            if ref is not None:
                return ref
            raise Inconclusive("negative dominant coefficient but no explicit witness")
        if not (c0.lo > 0):
            w = w / 2**10
            continue
        others = []
        blocked = None
        for t in pf.terms:
            if t is dom:
                continue
            rsq = _ratio_sq(t.pole_box, dom.pole_box, xiv)
            if rsq.hi < 1:
                from ..kernel.rationals import sqrt_upper

                others.append((_abs_upper(t.coefficients[0]), sqrt_upper(rsq.hi, Q(1, 2**30)), False))
            elif rsq.lo > 1:
                blocked = ("ratio-above-one", t)
                break
            else:
                unit = _pf_exact_unit_ratio(f, x, t, dom)
                if unit:
                    others.append((_abs_upper(t.coefficients[0]), Q(1), True))
                else:
                    blocked = ("ratio-undecided", t)
                    break
        if blocked is not None:
            if blocked[0] == "ratio-above-one":
                raise RatioAboveOne(blocked[1].pole_box)
            w = w / 2**10
            continue
        # tail: find K0 with sum |c| r^(K0+1) < c0
        K0 = 1
        tail = None
        while K0 <= K0_CAP:
            rec = PfTailRecord(K0, c0.lo, others)
            if rec.inequality_holds():
                tail = rec
                break
            K0 = K0 * 2
        if tail is None:
            w = w / 2**10
            continue
        checks = []
        failed = False
        for k in range(tail.K0):
            s, lower = _pf_value_sign(f, pf, x, k, precision_rounds)
            if s is None:
                failed = True
                break
            if s < 0:
                return Refutation(k, lower, _x_repr(x))
            checks.append(FiniteCheck(k, "box" if lower is not None else "exact", lower if lower is not None else Q(0)))
        if failed:
            w = w / 2**10
            continue
        return AbsMonCertificate(
            _x_repr(x), "pf", checks, tail,
            f"no real pole in [{xiv.lo}, 0] (checked exactly)",
        )
    raise Inconclusive("partial-fraction certification exceeded precision rounds")


class RatioAboveOne(Exception):
    """The point lies beyond the equidistance cut of some pole pair: the
    radius is capped by the pole geometry at this trial (Theorem 3.3 side)."""

    def __init__(self, pole_box):
        self.pole_box = pole_box


def _abs_upper(box: ComplexBox) -> Fraction:
    from ..kernel.rationals import sqrt_upper

    m = box.abs_sq().hi
    return sqrt_upper(m, Q(1, 2**30))


def _pf_value_sign(f, pf, x: PointLike, k: int, rounds: int):
    """(sign, certified bound) of psi^(k)(x): box evaluation through the
    decomposition, exact fallback for rational data."""
    xiv = _x_interval(x)
    for _ in range(rounds):
        # sign of psi^(k)(x) equals the sign of sum c/(alpha-x)^(k+1) (+ the
        # constant when k = 0); the positive k! factor is dropped
        total = ComplexBox.point(0) if k else ComplexBox.from_real(pf.constant)
        for t in pf.terms:
            diff = t.pole_box - ComplexBox.from_real(xiv)
            total = total + t.coefficients[0] / diff ** (k + 1)
        iv = total.re
        if iv.lo > 0:
            return 1, iv.lo
        if iv.hi < 0:
            return -1, iv.hi
        # exact fallback
        if f.field is None:
            g = kth_derivative(f, k)
            if isinstance(x, AlgebraicNumber):
                if x.is_root_of(g.num):
                    return 0, None
                s = _exact_sign_rational_at_algebraic(g, x)
                if s is not None:
                    return s, None
            else:
                v = g.eval_exact(Q(x))
                return ((v > 0) - (v < 0)), None
        elif not isinstance(x, AlgebraicNumber):
            g = kth_derivative(f, k)
            v = g.eval_exact(Q(x) if isinstance(x, (int, Fraction)) else x)
            return _fe_sign(v), None
        if isinstance(x, AlgebraicNumber):
            x.refine(x.box.width / 2**8)
            xiv = _x_interval(x)
        else:
            return None, None
    return None, None


def _exact_sign_rational_at_algebraic(g: RationalFunction, x: AlgebraicNumber):
    for _ in range(80):
        n = g.num.eval_interval(x.box.re)
        d = g.den.eval_interval(x.box.re)
        sn, sd = n.sign(), d.sign()
        if sn not in (None,) and sd not in (None, 0) and sn is not None:
            if sn == 0:
                return 0
            return sn * sd
        x.refine(x.box.width / 2**8)
    return None


def _scan_negative(f, pf, x: PointLike, cap: int) -> Optional[Refutation]:
    for k in range(cap + 1):
        s, bound = _pf_value_sign(f, pf, x, k, 6)
        if s is not None and s < 0:
            return Refutation(k, bound if bound is not None else Q(-1), _x_repr(x))
    return None


# ---------------------------------------------------------------------------
# the certified radius bracket
# ---------------------------------------------------------------------------


@dataclass
class RadiusBracket:
    kind: str  # "bracket" | "zero" | "infinite"
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    lo_certificate: Optional[AbsMonCertificate] = None
    hi_witness: Optional[dict] = None
    B: Optional[BRadius] = None
    note: str = ""

    def contains_value(self, v: Fraction) -> bool:
        if self.kind != "bracket":
            return False
        return self.lo <= v <= self.hi

    def contains_algebraic(self, x: AlgebraicNumber, slack: Fraction = Q(0)) -> bool:
        if self.kind != "bracket":
            return False
        x.refine(min(Q(1, 2**40), (self.hi - self.lo) / 4 if self.hi > self.lo else Q(1, 2**80)))
        return self.lo - slack <= x.box.re.lo and x.box.re.hi <= self.hi + slack

    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> dict:
        out = {"kind": self.kind, "note": self.note}
        if self.kind == "bracket":
            out["lo"], out["hi"] = str(self.lo), str(self.hi)
            if self.lo_certificate:
                out["lo_certificate"] = self.lo_certificate.to_json()
            if self.hi_witness:
                out["hi_witness"] = {k: str(v) for k, v in self.hi_witness.items()}
        return out


def _dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    from ..kernel.sturm import _bits_for

    w = hi - lo
    bits = _bits_for(w) + 3
    scale = 1 << bits
    m = Q(math.floor((lo + hi) / 2 * scale), scale)
    if not (lo < m < hi):
        m = (lo + hi) / 2
    return m


def compute_R(
    f: RationalFunction,
    tol: Fraction = Q(1, 10**9),
    k_max: int = 200,
    max_window_doublings: int = 20,
) -> RadiusBracket:
    """Certified bracket for the radius of absolute monotonicity.

    hi starts from the pole-geometry bound (or a refuted trial), lo grows by
    bisection on certified points; inconclusive trials escalate precision and
    never move the bracket."""
    f = reduce(f)
    if f.den.degree == 0:
        raise ValueError("radius of a polynomial is out of scope")
    if not f.den.constant:
        raise ValueError("pole at the origin")
    ps = PoleSet.of(f)
    if not ps.positive_real_poles():
        return RadiusBracket("zero", Q(0), Q(0), note="no positive real pole")
    B = compute_B(f, width=max(tol / 4, Q(1, 2**120)))
    if B.kind == "zero":
        return RadiusBracket("zero", Q(0), Q(0), B=B, note="origin not nearest to the positive real pole")

    lo = Q(0)
    lo_cert: Optional[AbsMonCertificate] = None
    hi: Optional[Fraction] = None
    hi_witness: Optional[dict] = None

    def try_point(r: Fraction):
        nonlocal lo, hi, lo_cert, hi_witness
        try:
            res = certify_absmon_at(f, -r, k_scan_cap=k_max)
        except PoleInWindow:
            hi = r if hi is None else min(hi, r)
            hi_witness = {"kind": "pole-in-window", "r": r}
            return "hi"
        except RatioAboveOne:
            hi = r if hi is None else min(hi, r)
            hi_witness = {"kind": "pole-geometry", "r": r}
            return "hi"
        if isinstance(res, Refutation):
            hi = r if hi is None else min(hi, r)
            hi_witness = {"kind": "negative-derivative", "ell": res.k, "r": r, "upper": res.upper}
            return "hi"
        if r > lo:
            lo, lo_cert = r, res
        return "lo"

    if B.kind == "infinite":
        for j in range(max_window_doublings + 1):
            r = Q(2) ** j
            if try_point(r) == "hi":
                break
        else:
            return RadiusBracket(
                "infinite", lo=lo, lo_certificate=lo_cert, B=B,
                note="unbounded (heuristic): certified at every doubled window",
            )
    else:
        hi = B.value.hi
        hi_witness = {"kind": "B-bound", "hi": hi}
        if lo == 0 and hi > 0:
            try_point(_dyadic_between(Q(0), hi))

    guard = 0
    while hi - lo > tol:
        guard += 1
        if guard > 4000:
            raise Inconclusive("radius bisection stalled")
        try_point(_dyadic_between(lo, hi))
    return RadiusBracket("bracket", lo, hi, lo_cert, hi_witness, B=B)
