"""Exact numeric kernel: rationals, intervals, boxes, polynomials, root
isolation and algebraic numbers (root objects)."""

from fractions import Fraction
from typing import Optional

from .algebraic import (
    DEFAULT_TOL,
    AlgebraicNumber,
    RefinementCapExceeded,
    algebraic_from_fraction,
    all_roots,
    interval_matches_decimal_refining,
    parse_root,
    root_object,
)
from .numberfield import FieldElement, NumberField, field_value_sign
from .polynomials import NEG_INF, Polynomial
from .rationals import ComplexBox, Q, RatInterval
from .resultants import annihilating_polynomial, resultant
from .sturm import isolate_real_roots as _isolate_intervals
from .sturm import refine_sign_change, sturm_chain, count_roots_halfopen, int_squarefree
from .winding import count_in_rect, isolate_upper_roots, refine_complex_root


def refine(x: AlgebraicNumber, width: Fraction) -> AlgebraicNumber:
    """Same root, isolation box width at most `width`."""
    if width <= 0:
        raise ValueError("width must be positive")
    return x.refine(width)


def isolate_real_roots(p: Polynomial, domain: Optional[RatInterval] = None) -> list[AlgebraicNumber]:
    """All real roots in `domain` (default: the whole line) as root objects,
    sorted increasing, with multiplicities of the original polynomial."""
    iso = _isolate_intervals(p, domain)
    sf = Polynomial.from_int_list(iso.sqfree)
    out = []
    for k, iv in enumerate(iso.intervals):
        iv = refine_sign_change(iso.sqfree, iv, DEFAULT_TOL)
        out.append(AlgebraicNumber(sf, k + 1, ComplexBox.from_real(iv), True, iso.multiplicities[k]))
    # indices refer to position among *all* real roots of the polynomial
    if domain is not None and out:
        ch = sturm_chain(iso.sqfree)
        first = out[0].box.re
        offset = count_roots_halfopen(ch, None, first.lo)
        if first.width == 0:
            offset -= 1  # the point root itself was included in (-inf, lo]
        for j, r in enumerate(out):
            r.index = offset + j + 1
    return out


def isolate_complex_roots(p: Polynomial) -> list[AlgebraicNumber]:
    """All roots, real first then complex, in the canonical order."""
    if p.is_zero() or p.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    return all_roots(p)


def conjugate_pairs(roots: list[AlgebraicNumber]) -> list[tuple[AlgebraicNumber, AlgebraicNumber]]:
    """Link conjugate pairs among the complex entries of an all_roots listing:
    pairs are adjacent with the negative-imaginary member first."""
    pairs = []
    comp = [r for r in roots if not r.is_real]
    for i in range(0, len(comp), 2):
        pairs.append((comp[i], comp[i + 1]))
    return pairs
