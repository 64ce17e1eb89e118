"""Certified root enclosures for polynomials with interval coefficients.

Used for denominators whose coefficients live in a number field: the
coefficients are enclosed in rational intervals and each simple root is
certified with a Krawczyk test, which proves existence and uniqueness of a
root of every polynomial in the coefficient family — in particular of the
exact one.  Float work (Durand-Kerner) only supplies starting guesses; all
certification is exact box arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .rationals import ComplexBox, Q, RatInterval

BoxPoly = list[ComplexBox]  # coefficients lowest degree first


def eval_boxpoly(p: BoxPoly, z: ComplexBox) -> ComplexBox:
    acc = ComplexBox.point(0)
    for c in reversed(p):
        acc = acc * z + c
    return acc


def boxpoly_derivative(p: BoxPoly) -> BoxPoly:
    return [c * ComplexBox.point(i) for i, c in enumerate(p) if i >= 1]


def durand_kerner(coeffs: list[complex], iters: int = 200) -> list[complex]:
    n = len(coeffs) - 1
    lead = coeffs[-1]
    cs = [c / lead for c in coeffs]
    roots = [complex(0.4, 0.9) ** k for k in range(n)]
    for _ in range(iters):
        delta = 0.0
        new = []
        for i, r in enumerate(roots):
            num = _horner(cs, r)
            den = 1.0 + 0j
            for j, s in enumerate(roots):
                if i != j:
                    den *= r - s
            if den == 0:
                den = 1e-30
            d = num / den
            new.append(r - d)
            delta = max(delta, abs(d))
        roots = new
        if delta < 1e-14:
            break
    return roots


def _horner(cs: list[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _to_q(x: float, bits: int = 64) -> Fraction:
    return Fraction(x).limit_denominator(1 << bits)


def krawczyk_certify(p: BoxPoly, box: ComplexBox) -> Optional[ComplexBox]:
    """If the Krawczyk operator maps `box` into its interior, return the
    (possibly smaller) certified box containing the unique root of every
    member of the family; None when the test is inconclusive."""
    dp = boxpoly_derivative(p)
    m = ComplexBox.point(box.re.mid, box.im.mid)
    fm = eval_boxpoly(p, m)
    dX = eval_boxpoly(dp, box)
    # Y ~ 1/f'(m) as a point
    dm = eval_boxpoly(dp, m)
    dc = complex(float(dm.re.mid), float(dm.im.mid))
    if dc == 0:
        return None
    yc = 1 / dc
    Y = ComplexBox.point(_to_q(yc.real), _to_q(yc.imag))
    one = ComplexBox.point(1)
    K = m - Y * fm + (one - Y * dX) * (box - m)
    if (
        box.re.lo < K.re.lo
        and K.re.hi < box.re.hi
        and box.im.lo < K.im.lo
        and K.im.hi < box.im.hi
    ):
        return K
    return None


class IntervalRootFinder:
    """Roots of a squarefree polynomial given through refinable coefficient
    enclosures.

    `coeff_fn(width)` must return the coefficient list as ComplexBoxes of
    width at most `width` (for number-field coefficients this refines the
    generator's isolating interval).
    """

    def __init__(self, degree: int, coeff_fn: Callable[[Fraction], BoxPoly]):
        self.degree = degree
        self.coeff_fn = coeff_fn
        self._roots: list[ComplexBox] | None = None
        self._coeff_width = Q(1, 2**40)

    def roots(self, width: Fraction) -> list[ComplexBox]:
        """All `degree` roots in certified pairwise-disjoint boxes of width at
        most `width`; conjugate symmetry is NOT applied (caller's business)."""
        if self._roots is None:
            self._bootstrap()
        guard = 0
        while any(b.width > width for b in self._roots):
            self._refine_all(width)
            guard += 1
            if guard > 4000:
                raise RuntimeError("interval root refinement stalled")
        return list(self._roots)

    def _bootstrap(self):
        for attempt in range(12):
            p = self.coeff_fn(self._coeff_width)
            mid = [complex(float(c.re.mid), float(c.im.mid)) for c in p]
            guesses = durand_kerner(mid)
            # initial radius: a fraction of the minimal pairwise gap
            certified = []
            ok = True
            for g in guesses:
                gap = min(
                    (abs(g - h) for h in guesses if h is not g),
                    default=1.0,
                )
                r = max(gap / 4, 1e-12)
                cert = None
                for scale in (1.0, 0.3, 3.0, 0.1, 10.0):
                    rr = _to_q(r * scale, 80)
                    if rr <= 0:
                        continue
                    box = ComplexBox(
                        RatInterval(_to_q(g.real, 80) - rr, _to_q(g.real, 80) + rr),
                        RatInterval(_to_q(g.imag, 80) - rr, _to_q(g.imag, 80) + rr),
                    )
                    cert = krawczyk_certify(p, box)
                    if cert is not None:
                        break
                if cert is None:
                    ok = False
                    break
                certified.append(cert)
            if ok and len(certified) == self.degree and _pairwise_disjoint(certified):
                self._roots = certified
                self._poly_cache = p
                return
            self._coeff_width = self._coeff_width**2
        raise RuntimeError("failed to certify all roots of the interval polynomial")

    def _refine_all(self, width: Fraction):
        # tighter coefficients, then one Krawczyk contraction per root
        self._coeff_width = min(self._coeff_width, width / 8) ** 1
        target = min(b.width for b in self._roots) / 2
        self._coeff_width = min(self._coeff_width, target * target, width * width)
        p = self.coeff_fn(self._coeff_width)
        out = []
        for b in self._roots:
            if b.width <= width:
                out.append(b)
                continue
            cert = krawczyk_certify(p, b)
            if cert is not None:
                out.append(
                    ComplexBox(cert.re.intersect(b.re), cert.im.intersect(b.im))
                )
            else:
                out.append(b)  # retry next round with tighter coefficients
        if all(o.width == b.width for o, b in zip(out, self._roots)):
            # no progress: square the coefficient precision
            self._coeff_width = self._coeff_width**2
        self._roots = out


def _pairwise_disjoint(boxes: list[ComplexBox]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if boxes[i].overlaps(boxes[j]):
                return False
    return True
