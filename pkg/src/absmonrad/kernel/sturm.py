"""Real root counting, isolation and refinement via Sturm chains.

The hot path works on primitive integer coefficient lists; pseudo-remainders
are divided by their content at every step so chain coefficients stay small
even for the degree-30 polynomials from the appendix tables.  Signs are
evaluated with homogeneous integer Horner, never through floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .polynomials import Polynomial, int_eval_homogeneous
from .rationals import Q, RatInterval

IntPoly = list[int]


def poly_to_int(p: Polynomial) -> IntPoly:
    return [int(c) for c in p.primitive().coeffs]


def int_derivative(p: IntPoly) -> IntPoly:
    return [i * c for i, c in enumerate(p)][1:]


def int_content(p: IntPoly) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g or 1


def int_primitive(p: IntPoly) -> IntPoly:
    g = int_content(p)
    return [c // g for c in p]


def int_pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b scaled so the multiplier is positive."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    delta = len(a) - len(b)
    if delta < 0:
        return a
    mult_sign = 1 if lb > 0 or (delta + 1) % 2 == 0 else -1
    for k in range(delta, -1, -1):
        top = a[k + db]
        if top:
            for j in range(len(a)):
                a[j] *= lb
            for j, c in enumerate(b):
                a[k + j] -= top * c
        else:
            # keep scaling uniform so the total multiplier is lb^(delta+1)
            for j in range(len(a)):
                a[j] *= lb
    while a and a[-1] == 0:
        a.pop()
    if mult_sign < 0:
        a = [-c for c in a]
    return a


def int_squarefree(p: IntPoly) -> IntPoly:
    """Squarefree part (primitive, positive leading coefficient)."""
    pp = Polynomial.from_int_list(p)
    sf = pp.squarefree_part().primitive()
    return [int(c) for c in sf.coeffs]


def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of a squarefree integer polynomial (content-reduced)."""
    chain = [int_primitive(p), int_primitive(int_derivative(p))]
    while len(chain[-1]) > 1:
        r = int_pseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(int_primitive([-c for c in r]))
    if chain[-1] == []:
        chain.pop()
    return chain


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def variations_at(chain: Sequence[IntPoly], x: Fraction) -> int:
    signs = []
    for member in chain:
        s = _sign(int_eval_homogeneous(member, x.numerator, x.denominator))
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def variations_at_inf(chain: Sequence[IntPoly], positive: bool) -> int:
    signs = []
    for member in chain:
        s = _sign(member[-1])
        if not positive and (len(member) - 1) % 2 == 1:
            s = -s
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_halfopen(chain, a: Optional[Fraction], b: Optional[Fraction]) -> int:
    """Number of distinct real roots in (a, b]; None endpoints mean +-infinity."""
    va = variations_at(chain, a) if a is not None else variations_at_inf(chain, positive=False)
    vb = variations_at(chain, b) if b is not None else variations_at_inf(chain, positive=True)
    return va - vb


def cauchy_bound(p: IntPoly) -> Fraction:
    """Power-of-two upper bound on the modulus of every root (dyadic keeps
    bisection endpoints cheap)."""
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else 0
    b = Q(1) + Q(m, lead)
    out = Q(1)
    while out < b:
        out *= 2
    return out


def dyadic_outward(iv: RatInterval, bits: int) -> RatInterval:
    """Smallest enclosing interval with endpoints on the 2^-bits grid."""
    scale = 1 << bits
    lo = Q(math.floor(iv.lo * scale), scale)
    hi = Q(math.ceil(iv.hi * scale), scale)
    return RatInterval(lo, hi)


class RealRootIsolation:
    """Disjoint isolating intervals for all real roots of an integer polynomial.

    Each entry is a RatInterval; degenerate intervals are exact rational
    roots, non-degenerate ones carry a strict sign change of the squarefree
    part.  `multiplicity[i]` refers to the original (possibly non-squarefree)
    input.
    """

    def __init__(self, sqfree: IntPoly, intervals: list[RatInterval], multiplicities: list[int]):
        self.sqfree = sqfree
        self.intervals = intervals
        self.multiplicities = multiplicities


def isolate_real_roots(
    p: Polynomial, domain: Optional[RatInterval] = None
) -> RealRootIsolation:
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    ints = [int(c) for c in p.primitive().coeffs]
    sf = int_squarefree(ints)
    if len(sf) <= 1:
        return RealRootIsolation(sf, [], [])
    chain = sturm_chain(sf)

    exact_roots: list[Fraction] = []
    work_poly = list(sf)

    def deflate(poly: IntPoly, r: Fraction) -> IntPoly:
        q = Polynomial.from_int_list(poly).exact_div(
            Polynomial((-r, Q(1)))
        ).primitive()
        return [int(c) for c in q.coeffs]

    bound = cauchy_bound(sf)
    lo = domain.lo if domain is not None else -bound
    hi = domain.hi if domain is not None else bound
    if domain is not None:
        lo, hi = max(lo, -bound), min(hi, bound)
        if lo > hi:
            return RealRootIsolation(sf, [], [])

    # closed-domain left endpoint may itself be a root
    if domain is not None and int_eval_homogeneous(sf, lo.numerator, lo.denominator) == 0:
        exact_roots.append(lo)
        work_poly = deflate(work_poly, lo)

    results: list[RatInterval] = []

    def rec(poly: IntPoly, ch, a: Fraction, b: Fraction):
        n = count_roots_halfopen(ch, a, b)
        if n == 0:
            return
        if len(poly) == 2:
            r = Q(-poly[0], poly[1])
            if a < r <= b:
                results.append(RatInterval.point(r))
            return
        fb = int_eval_homogeneous(poly, b.numerator, b.denominator)
        if n == 1:
            fa = int_eval_homogeneous(poly, a.numerator, a.denominator)
            if fb == 0:
                results.append(RatInterval.point(b))
                return
            if fa * fb < 0:
                results.append(RatInterval(a, b))
                return
        mid = (a + b) / 2
        if int_eval_homogeneous(poly, mid.numerator, mid.denominator) == 0:
            results.append(RatInterval.point(mid))
            newpoly = deflate(poly, mid)
            if len(newpoly) > 1:
                newch = sturm_chain(newpoly)
                rec(newpoly, newch, a, mid)
                rec(newpoly, newch, mid, b)
            return
        rec(poly, ch, a, mid)
        rec(poly, ch, mid, b)

    if lo < hi:
        rec(work_poly, sturm_chain(work_poly) if work_poly != sf else chain, lo, hi)
    for r in exact_roots:
        results.append(RatInterval.point(r))
    results.sort(key=lambda iv: (iv.lo, iv.hi))

    # normalize: endpoints of non-degenerate intervals are never roots of sf
    # (exact rational roots recorded as points can coincide with a neighbour's
    # endpoint produced by the half-open bisection)
    def off_root(iv: RatInterval) -> RatInterval:
        a, b = iv.lo, iv.hi
        if a == b:
            return iv
        if int_eval_homogeneous(sf, b.numerator, b.denominator) == 0:
            w = b - a
            k = 2
            while True:
                c = b - w / 2**k
                if c <= a:
                    k += 1
                    continue
                vc = int_eval_homogeneous(sf, c.numerator, c.denominator)
                va = int_eval_homogeneous(sf, a.numerator, a.denominator)
                if vc != 0 and va * vc < 0:
                    b = c
                    break
                k += 1
        if int_eval_homogeneous(sf, a.numerator, a.denominator) == 0:
            w = b - a
            k = 2
            while True:
                c = a + w / 2**k
                if c >= b:
                    k += 1
                    continue
                vc = int_eval_homogeneous(sf, c.numerator, c.denominator)
                vb = int_eval_homogeneous(sf, b.numerator, b.denominator)
                if vc != 0 and vb * vc < 0:
                    a = c
                    break
                k += 1
        return RatInterval(a, b)

    results = [off_root(iv) for iv in results]

    # multiplicities from the squarefree decomposition of the original input
    mults = []
    decomp = Polynomial.from_int_list(ints).squarefree_decomposition()
    for iv in results:
        m = 1
        for factor, k in decomp:
            fi = [int(c) for c in factor.primitive().coeffs]
            if iv.width == 0:
                v = int_eval_homogeneous(fi, iv.lo.numerator, iv.lo.denominator)
                if v == 0:
                    m = k
                    break
            else:
                va = int_eval_homogeneous(fi, iv.lo.numerator, iv.lo.denominator)
                vb = int_eval_homogeneous(fi, iv.hi.numerator, iv.hi.denominator)
                if va * vb < 0:
                    m = k
                    break
        mults.append(m)
    return RealRootIsolation(sf, results, mults)


def refine_sign_change(p: IntPoly, iv: RatInterval, width: Fraction) -> RatInterval:
    """Shrink a sign-change (or exact) isolating interval below `width`.

    Bisection with interval-Newton acceleration; every produced endpoint is
    rounded outward to a dyadic grid so denominators never stack up.
    """
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    slo = _sign(int_eval_homogeneous(p, lo.numerator, lo.denominator))
    shi = _sign(int_eval_homogeneous(p, hi.numerator, hi.denominator))
    if slo == 0:
        return RatInterval.point(lo)
    if shi == 0:
        return RatInterval.point(hi)
    deriv = Polynomial.from_int_list(int_derivative(p))

    def sign_at(x: Fraction) -> int:
        return _sign(int_eval_homogeneous(p, x.numerator, x.denominator))

    while hi - lo > width:
        cur = hi - lo
        bits = max(4, _bits_for(cur) + 6)
        newton_done = False
        dIv = deriv.eval_interval(RatInterval(lo, hi))
        if not dIv.contains_zero():
            m = _dyadic_mid(lo, hi)
            fm = Q(
                int_eval_homogeneous(p, m.numerator, m.denominator),
                m.denominator ** (len(p) - 1),
            )
            cand = RatInterval.point(m) - RatInterval.point(fm) / dIv
            nlo, nhi = max(lo, cand.lo), min(hi, cand.hi)
            if nlo <= nhi and (nhi - nlo) <= cur / 2:
                snapped = dyadic_outward(RatInterval(nlo, nhi), 2 * bits)
                nlo, nhi = max(lo, snapped.lo), min(hi, snapped.hi)
                snlo, snhi = sign_at(nlo), sign_at(nhi)
                if snlo == 0:
                    return RatInterval.point(nlo)
                if snhi == 0:
                    return RatInterval.point(nhi)
                if snlo * snhi < 0:
                    lo, hi, slo = nlo, nhi, snlo
                    newton_done = True
        if not newton_done:
            m = _dyadic_mid(lo, hi)
            sm = sign_at(m)
            if sm == 0:
                return RatInterval.point(m)
            if sm == slo:
                lo = m
            else:
                hi = m
    return RatInterval(lo, hi)


def _bits_for(w: Fraction) -> int:
    """ceil(-log2 w) for 0 < w, clipped below at 0."""
    if w >= 1:
        return 0
    return (w.denominator // w.numerator).bit_length()


def _dyadic_mid(lo: Fraction, hi: Fraction) -> Fraction:
    """A point near the middle of (lo, hi) with a small power-of-two denominator."""
    w = hi - lo
    bits = _bits_for(w) + 3
    scale = 1 << bits
    m = Q(math.floor((lo + hi) / 2 * scale), scale)
    if m <= lo or m >= hi:
        m = (lo + hi) / 2
    return m


# ---------------------------------------------------------------------------
# Generic Sturm machinery over an arbitrary ordered coefficient field
# (used for polynomials with number-field coefficients).
# ---------------------------------------------------------------------------


def sturm_chain_generic(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree >= 1:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return [c for c in chain if not c.is_zero()]


def variations_generic(chain: Sequence[Polynomial], x: Fraction, sign_of: Callable) -> int:
    signs = []
    for member in chain:
        s = sign_of(member(x))
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_generic(
    chain: Sequence[Polynomial],
    a: Optional[Fraction],
    b: Optional[Fraction],
    sign_of: Callable,
) -> int:
    def vinf(positive: bool) -> int:
        signs = []
        for member in chain:
            s = sign_of(member.leading)
            if not positive and member.degree % 2 == 1:
                s = -s
            if s:
                signs.append(s)
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    va = variations_generic(chain, a, sign_of) if a is not None else vinf(False)
    vb = variations_generic(chain, b, sign_of) if b is not None else vinf(True)
    return va - vb
