"""Algebraic numbers as root objects: squarefree integer defining polynomial,
1-based index in the ordering (real roots first in increasing order, then
complex roots by increasing real part, ties by increasing imaginary part),
and a certified isolating box.

The box is a monotone cache: refinement shrinks it in place but the value —
(defining, index) — never changes, so instances still behave as immutable
values.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Optional, Sequence

from .polynomials import Polynomial, int_eval_homogeneous
from .rationals import ComplexBox, Q, RatInterval
from .resultants import root_sums_polynomial
from .sturm import (
    int_squarefree,
    isolate_real_roots,
    refine_sign_change,
)
from .winding import isolate_upper_roots, refine_complex_root

DEFAULT_TOL = Q(1, 2**64)
REFINE_CAP = 10_000


class RefinementCapExceeded(RuntimeError):
    pass


class AlgebraicNumber:
    __slots__ = ("defining", "index", "box", "is_real", "multiplicity")

    def __init__(self, defining: Polynomial, index: int, box: ComplexBox, is_real: bool, multiplicity: int = 1):
        self.defining = defining
        self.index = index
        self.box = box
        self.is_real = is_real
        self.multiplicity = multiplicity

    # -- basic views ----------------------------------------------------

    @property
    def interval(self) -> RatInterval:
        if not self.is_real:
            raise ValueError("complex root object has no real interval")
        return self.box.re

    def is_rational(self) -> bool:
        return self.defining.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational root object")
        return -self.defining.coeffs[0] / self.defining.coeffs[1]

    def __float__(self):
        if self.is_real:
            return float(self.interval.mid)
        return float(self.box.re.mid)

    def approx_complex(self) -> complex:
        return complex(float(self.box.re.mid), float(self.box.im.mid))

    # -- refinement -----------------------------------------------------

    def refine(self, width: Fraction) -> "AlgebraicNumber":
        """Shrink the isolation box below `width` (in place and returned)."""
        if self.box.width <= width:
            return self
        if self.is_rational():
            r = self.as_fraction()
            self.box = ComplexBox.point(r)
            return self
        if self.is_real:
            ints = [int(c) for c in self.defining.coeffs]
            iv = refine_sign_change(ints, self.box.re, width)
            self.box = ComplexBox.from_real(iv)
        else:
            self.box = refine_complex_root(self.defining, self.box, width)
        return self

    # -- exact predicates -------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a real root object."""
        if not self.is_real:
            raise ValueError("sign of a complex root object")
        if not self.defining.coeffs[0]:
            # zero is a root of the defining polynomial; is it this root?
            if self.box.re.contains(Q(0)):
                # squarefree: 0 is the unique root in any isolating interval
                return 0
        iv = self.interval
        steps = 0
        while iv.sign() is None:
            self.refine(iv.width / 4)
            iv = self.interval
            steps += 1
            if steps > REFINE_CAP:
                raise RefinementCapExceeded("sign determination exceeded refinement cap")
        return iv.sign()

    def is_root_of(self, p: Polynomial) -> bool:
        """Exact: does this (real) root object satisfy p = 0?

        Roots of gcd(defining, p) are roots of the defining polynomial, and
        the isolating interval contains exactly one of those — this root.  So
        the value is a root of p iff the gcd has a root in the interval.
        """
        if not self.is_real:
            raise ValueError("is_root_of implemented for real root objects")
        g = self.defining.gcd(p)
        if g.degree < 1:
            return False
        gi = int_squarefree([int(c) for c in g.primitive().coeffs])
        if self.box.re.width == 0:
            x = self.box.re.lo
            return int_eval_homogeneous(gi, x.numerator, x.denominator) == 0
        from .sturm import count_roots_halfopen, sturm_chain

        ch = sturm_chain(gi)
        return count_roots_halfopen(ch, self.box.re.lo, self.box.re.hi) >= 1

    def equals(self, other: "AlgebraicNumber") -> bool:
        """Exact equality of two real root objects."""
        if not (self.is_real and other.is_real):
            raise ValueError("equality test implemented for real root objects")
        if not self.box.re.overlaps(other.box.re):
            return False
        if not self.is_root_of(other.defining) or not other.is_root_of(self.defining):
            return False
        # both are roots of g = gcd; equal iff they are the same g-root
        g = self.defining.gcd(other.defining)
        gi = int_squarefree([int(c) for c in g.primitive().coeffs])
        giso = isolate_real_roots(Polynomial.from_int_list(gi))
        cands = list(giso.intervals)
        steps = 0
        while True:
            mine = [i for i, iv in enumerate(cands) if iv.overlaps(self.box.re)]
            theirs = [i for i, iv in enumerate(cands) if iv.overlaps(other.box.re)]
            if len(mine) == 1 and len(theirs) == 1:
                return mine[0] == theirs[0]
            cands = [refine_sign_change(gi, iv, iv.width / 16) for iv in cands]
            self.refine(self.box.width / 8)
            other.refine(other.box.width / 8)
            steps += 1
            if steps > REFINE_CAP:
                raise RefinementCapExceeded("equality test exceeded refinement cap")

    def compare(self, other: "AlgebraicNumber") -> int:
        """Exact three-way comparison of real root objects."""
        if self.equals(other):
            return 0
        steps = 0
        while self.box.re.overlaps(other.box.re):
            self.refine(self.box.width / 8)
            other.refine(other.box.width / 8)
            steps += 1
            if steps > REFINE_CAP:
                raise RefinementCapExceeded("comparison exceeded refinement cap")
        return -1 if self.box.re.hi < other.box.re.lo else 1

    def compare_fraction(self, x: Fraction) -> int:
        """Exact comparison of a real root object with a rational."""
        ints = [int(c) for c in self.defining.coeffs]
        if int_eval_homogeneous(ints, x.numerator, x.denominator) == 0 and self.box.re.contains(x):
            return 0
        steps = 0
        while self.box.re.contains(x):
            self.refine(self.box.width / 8)
            steps += 1
            if steps > REFINE_CAP:
                raise RefinementCapExceeded("comparison exceeded refinement cap")
        return -1 if self.box.re.hi < x else 1

    # -- derived root objects ---------------------------------------------

    def negate(self) -> "AlgebraicNumber":
        p = self.defining.scale_arg(Q(-1)).primitive()
        box = ComplexBox(-self.box.re, -self.box.im)
        return from_defining_and_box(p, box, self.is_real, self.multiplicity)

    def add_fraction(self, q: Fraction) -> "AlgebraicNumber":
        p = self.defining.shift(-q).primitive()
        box = ComplexBox(self.box.re + RatInterval.point(q), self.box.im)
        return from_defining_and_box(p, box, self.is_real, self.multiplicity)

    def mul_fraction(self, q: Fraction) -> "AlgebraicNumber":
        if not q:
            raise ValueError("scaling a root object by zero")
        p = self.defining.scale_arg(1 / q).primitive()
        box = ComplexBox(self.box.re * RatInterval.point(q), self.box.im * RatInterval.point(q))
        return from_defining_and_box(p, box, self.is_real, self.multiplicity)

    # -- text -----------------------------------------------------------

    def serialize(self) -> str:
        cs = ",".join(str(int(c)) for c in reversed(self.defining.coeffs))
        return f"root({self.index}; {cs})"

    def decimal_str(self, digits: int) -> str:
        """Truncated decimal expansion with all shown digits correct."""
        target = Q(1, 10 ** (digits + 2))
        self.refine(target)
        v = self.box.re.mid if self.is_real else self.box.re.mid
        sign = "-" if v < 0 else ""
        v = abs(v)
        scaled = int(v * 10**digits)
        s = str(scaled).rjust(digits + 1, "0")
        ip, fp = s[:-digits], s[-digits:]
        return f"{sign}{ip}.{fp}"

    def matches_decimal(self, printed: str) -> bool:
        """Check a printed approximation in the paper's convention: all shown
        digits are correct (truncation toward zero, no rounding)."""
        if not self.is_real:
            raise ValueError("decimal check on a complex root object; check parts instead")
        return interval_matches_decimal_refining(self, printed)

    def __repr__(self):
        if self.is_real:
            return f"<{self.serialize()} ~ {float(self):.6f}>"
        return f"<{self.serialize()} ~ {self.approx_complex():.6f}>"


def parse_root(text: str) -> AlgebraicNumber:
    m = _re.fullmatch(r"\s*root\(\s*(\d+)\s*;\s*([-\d,\s]+)\)\s*", text)
    if not m:
        raise ValueError(f"not a root(...) literal: {text!r}")
    idx = int(m.group(1))
    cs = [int(t) for t in m.group(2).split(",")]
    return root_object(list(reversed(cs)), idx)


def _decimal_to_bounds(printed: str) -> RatInterval:
    """Acceptance window for a printed approximation: one unit in the last
    shown digit either way.  The source usually truncates ("all shown digits
    correct") but rounds the final digit in a few appendix entries, so the
    anti-typo check accepts both conventions."""
    printed = printed.strip()
    neg = printed.startswith("-")
    if neg:
        printed = printed[1:]
    if "." in printed:
        ip, fp = printed.split(".")
    else:
        ip, fp = printed, ""
    k = len(fp)
    mag = Q(int(ip + fp) if ip + fp else 0, 10**k)
    ulp = Q(1, 10**k)
    # magnitude window: truncation gives [mag, mag+ulp), rounding gives
    # [mag-ulp/2, mag+ulp/2); the union still rejects any digit typo
    lo, hi = mag - ulp / 2, mag + ulp
    if neg:
        lo, hi = -hi, -lo
    return RatInterval(lo, hi)


def interval_matches_decimal_refining(x: AlgebraicNumber, printed: str) -> bool:
    """True iff the exact value lies within one last-digit unit of `printed`."""
    rng = _decimal_to_bounds(printed)
    steps = 0
    while True:
        iv = x.box.re
        if rng.lo <= iv.lo and iv.hi < rng.hi:
            return True
        if iv.hi < rng.lo or iv.lo >= rng.hi:
            return False
        x.refine(x.box.width / 16)
        steps += 1
        if steps > REFINE_CAP:
            raise RefinementCapExceeded("decimal check exceeded refinement cap")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def root_object(coeffs: Sequence, m: int, tol: Fraction = DEFAULT_TOL) -> AlgebraicNumber:
    """The m-th root (1-based) of the polynomial with the given coefficients
    (lowest degree first) in the ordering of the notation section."""
    p = Polynomial([c if isinstance(c, Fraction) else Q(c) for c in coeffs])
    if p.is_zero():
        raise ValueError("root object of the zero polynomial")
    if p.degree < 1:
        raise ValueError("root object of a constant polynomial")
    if m < 1:
        raise ValueError(f"root index {m} out of range")
    # real indices never need the (much costlier) complex isolation
    sf_int = int_squarefree([int(c) for c in p.primitive().coeffs])
    sf = Polynomial.from_int_list(sf_int)
    iso = isolate_real_roots(p)
    if m <= len(iso.intervals):
        iv = refine_sign_change(sf_int, iso.intervals[m - 1], tol)
        return AlgebraicNumber(sf, m, ComplexBox.from_real(iv), True, iso.multiplicities[m - 1])
    roots = all_roots(p, tol)
    if m > len(roots):
        raise ValueError(f"root index {m} out of range (1..{len(roots)})")
    return roots[m - 1]


def all_roots(p: Polynomial, tol: Fraction = DEFAULT_TOL) -> list[AlgebraicNumber]:
    """All distinct roots in the canonical order, as root objects."""
    sf_int = int_squarefree([int(c) for c in p.primitive().coeffs])
    sf = Polynomial.from_int_list(sf_int)
    iso = isolate_real_roots(p)
    out: list[AlgebraicNumber] = []
    for k, iv in enumerate(iso.intervals):
        iv2 = refine_sign_change(sf_int, iv, tol)
        out.append(
            AlgebraicNumber(sf, k + 1, ComplexBox.from_real(iv2), True, iso.multiplicities[k])
        )
    uppers = isolate_upper_roots(p)
    if uppers:
        ordered = _order_upper(sf, uppers, tol)
        idx = len(out) + 1
        for re_class in ordered:
            for box, conj_first in re_class:
                b = box
                if conj_first:
                    b = ComplexBox(box.re, -box.im)
                out.append(AlgebraicNumber(sf, idx, b, False, 1))
                idx += 1
    return out


def _order_upper(sf: Polynomial, uppers: list[ComplexBox], tol: Fraction):
    """Group upper-half boxes into real-part classes (exact ties detected via
    the root-sums polynomial), order classes by Re and members by Im, and emit
    [(box, is_conjugate), ...] per class with conjugates interleaved."""
    boxes = [refine_complex_root(sf, b, min(tol, b.width / 4)) for b in uppers]

    # fast path: all Re intervals pairwise disjoint -> no ties to resolve
    def overlaps_any(bs):
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if bs[i].re.overlaps(bs[j].re):
                    return True
        return False

    rounds = 0
    while overlaps_any(boxes) and rounds < 6:
        boxes = [refine_complex_root(sf, b, b.width / 16) for b in boxes]
        rounds += 1

    classes: list[list[ComplexBox]] = []
    if not overlaps_any(boxes):
        for b in sorted(boxes, key=lambda b: b.re.lo):
            classes.append([b])
    else:
        # exact tie resolution: 2*Re of every root is a root of the sums
        # polynomial; boxes in the same isolating interval share Re exactly
        sums = root_sums_polynomial(sf)
        siso = isolate_real_roots(sums)
        sf_sums = siso.sqfree
        assignments = []
        for b in boxes:
            target = b.re * 2
            cands = [iv for iv in siso.intervals]
            while True:
                hits = [i for i, iv in enumerate(cands) if iv.overlaps(target)]
                if len(hits) == 1:
                    assignments.append(hits[0])
                    break
                if len(hits) == 0:
                    raise RuntimeError("real-part class assignment failed")
                cands = [
                    refine_sign_change(sf_sums, iv, iv.width / 16) if i in hits else iv
                    for i, iv in enumerate(cands)
                ]
                b = refine_complex_root(sf, b, b.width / 16)
                target = b.re * 2
        keyed = sorted(zip(assignments, boxes), key=lambda t: (siso.intervals[t[0]].lo,))
        cur_key = None
        for key, b in keyed:
            if key != cur_key:
                classes.append([])
                cur_key = key
            classes[-1].append(b)

    out = []
    for cls in classes:
        # within a class: sort by imaginary part; emit -im before +im
        members = list(cls)
        rounds = 0
        while _im_overlap(members) and rounds < 40:
            members = [refine_complex_root(sf, b, b.width / 16) for b in members]
            rounds += 1
        members.sort(key=lambda b: b.im.lo)
        entries = []
        for b in reversed(members):
            entries.append((b, True))  # conjugate (negative imaginary part)
        for b in members:
            entries.append((b, False))
        out.append(entries)
    return out


def _im_overlap(members: list[ComplexBox]) -> bool:
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if members[i].im.overlaps(members[j].im):
                return True
    return False


def from_defining_and_box(
    p: Polynomial, box: ComplexBox, is_real: bool, multiplicity: int = 1
) -> AlgebraicNumber:
    """Root object for the root of p certified to lie in `box` (the box must
    enclose exactly the intended root, e.g. an exact image of another box)."""
    sf_int = int_squarefree([int(c) for c in p.primitive().coeffs])
    sf = Polynomial.from_int_list(sf_int)
    if is_real:
        iso = isolate_real_roots(sf)
        cands = list(iso.intervals)
        target = box.re
        while True:
            hits = [i for i, iv in enumerate(cands) if iv.overlaps(target)]
            if len(hits) == 1:
                i = hits[0]
                return AlgebraicNumber(sf, i + 1, ComplexBox.from_real(cands[i]), True, multiplicity)
            if not hits:
                raise ValueError("box does not enclose a root of the polynomial")
            cands = [
                refine_sign_change(sf_int, iv, iv.width / 16) if i in hits else iv
                for i, iv in enumerate(cands)
            ]
    # complex: locate among ordered complex roots
    roots = all_roots(sf)
    target = box
    while True:
        hits = [r for r in roots if not r.is_real and r.box.overlaps(target)]
        if len(hits) == 1:
            r = hits[0]
            return AlgebraicNumber(sf, r.index, r.box, False, multiplicity)
        if not hits:
            raise ValueError("box does not enclose a complex root of the polynomial")
        for r in hits:
            r.refine(r.box.width / 16)


def algebraic_from_fraction(q: Fraction) -> AlgebraicNumber:
    den = q.denominator
    p = Polynomial((Q(-q.numerator), Q(den)))
    return AlgebraicNumber(p.primitive(), 1, ComplexBox.point(q), True, 1)
