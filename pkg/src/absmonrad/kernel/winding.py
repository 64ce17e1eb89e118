"""Certified complex root counting and isolation for rational polynomials.

Counting in a rectangle is done through the argument principle: walking the
boundary counterclockwise, the winding number equals the signed count of
crossings of the positive real axis, and every crossing is located by Sturm
isolation of the imaginary part along an edge — all sign decisions are exact
rational computations.  Isolation is subdivision on winding counts; once a
box holds a single root, refinement switches to an interval Newton
contraction (with subdivision as fallback), rounding endpoints to dyadics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polynomials import Polynomial, int_eval_homogeneous
from .rationals import ComplexBox, Q, RatInterval
from .sturm import (
    cauchy_bound,
    count_roots_halfopen,
    dyadic_outward,
    int_squarefree,
    isolate_real_roots,
    refine_sign_change,
    sturm_chain,
)


@dataclass(frozen=True)
class CF:
    """Complex number with exact rational parts."""

    re: Fraction
    im: Fraction

    def __add__(self, o):
        return CF(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return CF(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return CF(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self.re and not self.im


def eval_complex(p: Polynomial, z: CF) -> CF:
    acc = CF(Q(0), Q(0))
    for c in reversed(p.coeffs):
        acc = acc * z + CF(c, Q(0))
    return acc


def edge_parts(p: Polynomial, start: CF, end: CF) -> tuple[Polynomial, Polynomial]:
    """Real and imaginary parts of t -> p(start + (end-start) t) on [0,1]."""
    d = end - start
    # Horner in the CF-coefficient polynomial ring
    u = [Q(0)]
    v = [Q(0)]
    # represent current polynomial value as coefficient lists over t
    ure: list[Fraction] = []
    uim: list[Fraction] = []
    for c in reversed(p.coeffs):
        # multiply (ure + i uim) by (start + d t) and add c
        nre = [Q(0)] * (len(ure) + 1)
        nim = [Q(0)] * (len(uim) + 1)
        for k in range(len(ure)):
            a, b = ure[k], uim[k]
            # times start
            nre[k] += a * start.re - b * start.im
            nim[k] += a * start.im + b * start.re
            # times d * t
            nre[k + 1] += a * d.re - b * d.im
            nim[k + 1] += a * d.im + b * d.re
        if nre:
            nre[0] += c
        else:
            nre = [c]
            nim = [Q(0)]
        ure, uim = nre, nim
    return Polynomial(ure), Polynomial(uim)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def count_in_rect(p: Polynomial, box: ComplexBox) -> Optional[int]:
    """Number of roots of p strictly inside the box, or None when a root (or a
    degenerate axis crossing) sits on the boundary and the box must be moved."""
    x1, x2 = box.re.lo, box.re.hi
    y1, y2 = box.im.lo, box.im.hi
    if x1 == x2 or y1 == y2:
        return None
    corners = [CF(x1, y1), CF(x2, y1), CF(x2, y2), CF(x1, y2)]
    vals = [eval_complex(p, c) for c in corners]
    for v in vals:
        if v.is_zero() or not v.im:
            return None  # root at corner, or corner on the real axis image

    winding = 0
    for i in range(4):
        start, end = corners[i], corners[(i + 1) % 4]
        u, v = edge_parts(p, start, end)
        if v.is_zero():
            return None
        g = u.gcd(v)
        if g.degree >= 1:
            gi = [int(c) for c in g.primitive().coeffs]
            ch = sturm_chain(int_squarefree(gi))
            if count_roots_halfopen(ch, Q(0), Q(1)) > 0 or int_eval_homogeneous(gi, 0, 1) == 0:
                return None  # root of p on this edge
        vi, _ = v.to_integer()  # sign-preserving integer scaling
        vsf = int_squarefree(vi)
        iso = isolate_real_roots(v, RatInterval(Q(0), Q(1)))
        for iv in iso.intervals:
            a, b = iv.lo, iv.hi
            if a == b:
                # exact rational root: direction from the first nonvanishing
                # derivative (even multiplicity = tangential, no crossing)
                mult, dval = 1, v.derivative()(a)
                while not dval:
                    mult += 1
                    dval = v.derivative(mult)(a)
                if mult % 2 == 0:
                    continue
                sb = _sign(dval)
                sa = -sb
            else:
                sa = _sign(int_eval_homogeneous(vi, a.numerator, a.denominator))
                sb = _sign(int_eval_homogeneous(vi, b.numerator, b.denominator))
                if sa == sb:
                    continue  # even multiplicity: no crossing
            # sign of u at the v-root: refine until certain
            work = iv
            while True:
                if work.lo == work.hi:
                    su = _sign(u(work.lo))
                    break
                uval = u.eval_interval(work)
                su = uval.sign()
                if su is not None and su != 0:
                    break
                work = refine_sign_change(vsf, work, work.width / 4)
            if su > 0:
                winding += 1 if (sa < 0 < sb) else -1
    return winding


def _jitters(width: Fraction):
    for k in (127, 511, 2048, 65536, 524287):
        yield width / k
        yield -width / k


def count_in_rect_robust(p: Polynomial, box: ComplexBox, max_tries: int = 12) -> tuple[Optional[int], ComplexBox]:
    """count_in_rect with automatic boundary perturbation.

    Returns (count, possibly enlarged box); the returned box contains the
    original one, so "count roots of the original box" callers must treat the
    result as a covering count.
    """
    cur = box
    n = count_in_rect(p, cur)
    tries = 0
    w = max(box.re.width, box.im.width, Q(1, 1024))
    jit = _jitters(w)
    while n is None and tries < max_tries:
        eps = next(jit)
        cur = ComplexBox(
            RatInterval(cur.re.lo - abs(eps), cur.re.hi + abs(eps) / 3),
            RatInterval(cur.im.lo - abs(eps) / 7, cur.im.hi + abs(eps) / 2),
        )
        n = count_in_rect(p, cur)
        tries += 1
    return n, cur


def isolate_upper_roots(p: Polynomial) -> list[ComplexBox]:
    """Disjoint single-root boxes for all roots of p with positive imaginary
    part (p rational, made squarefree internally)."""
    sf_int = int_squarefree([int(c) for c in p.primitive().coeffs])
    sf = Polynomial.from_int_list(sf_int)
    deg = int(sf.degree)
    if deg <= 0:
        return []
    chain = sturm_chain(sf_int)
    n_real = count_roots_halfopen(chain, None, None)
    n_pairs = (deg - n_real) // 2
    if n_pairs == 0:
        return []
    bound = cauchy_bound(sf_int)
    y_b = bound
    big = None
    while big is None:
        # asymmetric edges (avoid the polynomial's own symmetry axes) perturbed
        # outward/upward only, never toward the real axis
        for k in range(24):
            left = -(bound + 1 + Q(k, 257))
            right = bound + Q(7, 6) + Q(k, 263)
            top = bound + Q(17, 12) + Q(k, 269)
            yb = y_b * (1 - Q(k, 509)) if k else y_b
            if yb <= 0:
                continue
            cand = ComplexBox(RatInterval(left, right), RatInterval(yb, top))
            n = count_in_rect(sf, cand)
            if n == n_pairs:
                big = cand
                break
            if n is not None and n < n_pairs:
                break  # bottom edge too high; halve and restart
        if big is None:
            y_b = y_b / 2
            if y_b < Q(1, 2**200):
                raise RuntimeError("failed to bracket complex roots away from the real axis")

    done: list[ComplexBox] = []
    queue: list[tuple[ComplexBox, int]] = [(big, n_pairs)]
    while queue:
        box, cnt = queue.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            done.append(box)
            continue
        # split along the longer side at a dyadic point, jitter on failure
        horizontal = box.re.width >= box.im.width
        lo = box.re.lo if horizontal else box.im.lo
        hi = box.re.hi if horizontal else box.im.hi
        split_done = False
        for denom in (2, 3, 5, 7, 11, 13):
            m = lo + (hi - lo) * (denom // 2 + (denom & 1)) / denom if denom != 2 else (lo + hi) / 2
            if not (lo < m < hi):
                continue
            if horizontal:
                b1 = ComplexBox(RatInterval(box.re.lo, m), box.im)
                b2 = ComplexBox(RatInterval(m, box.re.hi), box.im)
            else:
                b1 = ComplexBox(box.re, RatInterval(box.im.lo, m))
                b2 = ComplexBox(box.re, RatInterval(m, box.im.hi))
            n1 = count_in_rect(sf, b1)
            if n1 is None:
                continue
            n2 = count_in_rect(sf, b2)
            if n2 is None:
                continue
            if n1 + n2 != cnt:
                continue  # a root sat exactly on the cut; try another cut
            queue.append((b1, n1))
            queue.append((b2, n2))
            split_done = True
            break
        if not split_done:
            raise RuntimeError("complex subdivision failed to find a clean cut")
    done.sort(key=lambda b: (b.re.lo, b.im.lo))
    return done


def refine_complex_root(p: Polynomial, box: ComplexBox, width: Fraction) -> ComplexBox:
    """Shrink a single-root box below `width` (interval Newton, subdivision
    fallback); the result is contained in the input box."""
    sf_int = int_squarefree([int(c) for c in p.primitive().coeffs])
    sf = Polynomial.from_int_list(sf_int)
    dp = sf.derivative()
    cur = box
    stall = 0
    while cur.width > width:
        bits = _bits_of(cur.width) + 8
        m = CF(_round_dyadic(cur.re.mid, bits + 4), _round_dyadic(cur.im.mid, bits + 4))
        if not cur.re.contains(m.re) or not cur.im.contains(m.im):
            m = CF(cur.re.mid, cur.im.mid)
        dbox = dp.eval_box(cur)
        contracted = False
        if not dbox.contains_zero():
            pm = eval_complex(sf, m)
            newton = ComplexBox.point(m.re, m.im) - ComplexBox.point(pm.re, pm.im) / dbox
            try:
                nre = newton.re.intersect(cur.re)
                nim = newton.im.intersect(cur.im)
            except ValueError:
                nre = nim = None
            if nre is not None:
                cand = ComplexBox(
                    dyadic_outward(nre, 2 * bits).intersect(cur.re),
                    dyadic_outward(nim, 2 * bits).intersect(cur.im),
                )
                if cand.width <= cur.width * Q(3, 4):
                    cur = cand
                    contracted = True
        if not contracted:
            stall += 1
            # quadrant subdivision with certified recount
            n, big = count_in_rect_robust(sf, cur)
            if n is None or n == 0:
                raise RuntimeError("lost the root during refinement")
            xm = _round_dyadic(cur.re.mid, bits)
            ym = _round_dyadic(cur.im.mid, bits)
            found = None
            for xr in (RatInterval(cur.re.lo, xm), RatInterval(xm, cur.re.hi)):
                for yr in (RatInterval(cur.im.lo, ym), RatInterval(ym, cur.im.hi)):
                    if xr.width == 0 or yr.width == 0:
                        continue
                    sub = ComplexBox(xr, yr)
                    nsub = count_in_rect(sf, sub)
                    if nsub:
                        found = sub
                        break
                if found:
                    break
            if found is None:
                # root may sit on the cut; nudge the cut lines
                xm2 = xm + cur.re.width / 37
                ym2 = ym + cur.im.width / 41
                for xr in (RatInterval(cur.re.lo, xm2), RatInterval(xm2, cur.re.hi)):
                    for yr in (RatInterval(cur.im.lo, ym2), RatInterval(ym2, cur.im.hi)):
                        sub = ComplexBox(xr, yr)
                        nsub = count_in_rect(sf, sub)
                        if nsub:
                            found = sub
                            break
                    if found:
                        break
            if found is None:
                raise RuntimeError("complex refinement subdivision failed")
            cur = found
            if stall > 4000:
                raise RuntimeError("complex refinement stalled")
    return cur


def _bits_of(w: Fraction) -> int:
    if w >= 1:
        return 0
    return (w.denominator // max(1, w.numerator)).bit_length()


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Q(round(x * scale), scale)
