"""Kernel tests: intervals, polynomials, root isolation, root objects."""

import random
from fractions import Fraction as Q

import pytest

from absmonrad.kernel import (
    AlgebraicNumber,
    ComplexBox,
    Polynomial,
    RatInterval,
    algebraic_from_fraction,
    conjugate_pairs,
    isolate_complex_roots,
    isolate_real_roots,
    parse_root,
    refine,
    resultant,
    root_object,
)
from absmonrad.kernel.numberfield import NumberField


def rand_poly(rng, deg, cmax=9):
    cs = [Q(rng.randint(-cmax, cmax), rng.randint(1, 4)) for _ in range(deg)]
    cs.append(Q(rng.choice([i for i in range(-cmax, cmax + 1) if i]), 1))
    return Polynomial(cs)


def test_interval_arithmetic_soundness():
    rng = random.Random(20240901)
    for _ in range(120):
        p = rand_poly(rng, rng.randint(0, 6))
        x = Q(rng.randint(-50, 50), rng.randint(1, 50))
        w = Q(rng.randint(0, 5), 97)
        iv = RatInterval(x - w, x + w)
        exact = p(x)
        assert p.eval_interval(iv).contains(exact)


def test_box_arithmetic_soundness():
    rng = random.Random(7)
    for _ in range(60):
        p = rand_poly(rng, rng.randint(1, 5))
        re, im = Q(rng.randint(-9, 9), 7), Q(rng.randint(-9, 9), 5)
        box = ComplexBox(RatInterval(re - Q(1, 99), re + Q(1, 99)), RatInterval(im, im + Q(1, 88)))
        val = p.eval_box(box)
        # exact complex evaluation at a corner must land inside
        from absmonrad.kernel.winding import CF, eval_complex

        v = eval_complex(p, CF(re, im))
        assert val.re.contains(v.re) and val.im.contains(v.im)


def test_interval_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        RatInterval(Q(-1), Q(1)).recip()


def test_root_object_ordering_z6_minus_1():
    # the notation-section example: z^6 - 1
    expect = [
        complex(-1, 0),
        complex(1, 0),
        complex(-0.5, -(3 ** 0.5) / 2),
        complex(-0.5, +(3 ** 0.5) / 2),
        complex(0.5, -(3 ** 0.5) / 2),
        complex(0.5, +(3 ** 0.5) / 2),
    ]
    for m in range(1, 7):
        r = root_object([-1, 0, 0, 0, 0, 0, 1], m)
        assert abs(r.approx_complex() - expect[m - 1]) < 1e-9


def test_root_object_sqrt2():
    r = root_object([-2, 0, 1], 2)
    assert r.is_real
    refine(r, Q(1, 10**30))
    assert r.box.width <= Q(1, 10**30)
    v = r.interval.mid
    assert abs(v * v - 2) < Q(1, 10**25)


def test_root_object_pade33_radius_polynomial():
    # root_1(1,-6,0,40): the unique real root of z^3 - 6 z^2 + 40 is negative;
    # its magnitude carries the printed digits 2.207606
    r = root_object([40, 0, -6, 1], 1)
    assert r.matches_decimal("-2.207606")
    assert r.negate().matches_decimal("2.207606")


def test_root_object_errors():
    with pytest.raises(ValueError):
        root_object([], 1)
    with pytest.raises(ValueError):
        root_object([Q(3)], 1)
    with pytest.raises(ValueError):
        root_object([-2, 0, 1], 3)
    with pytest.raises(ValueError):
        root_object([-2, 0, 1], 0)


def test_refine_monotone_and_cheap_reuse():
    r = root_object([-2, 0, 1], 2)
    prev = r.box.re
    for w in (Q(1, 2**10), Q(1, 2**30), Q(1, 2**50)):
        refine(r, w)
        assert prev.contains_interval(r.box.re)
        prev = r.box.re


def test_serialization_roundtrip():
    r = root_object([40, 0, -6, 1], 1)
    s = r.serialize()
    assert s == "root(1; 1,-6,0,40)"
    r2 = parse_root(s)
    assert r2.equals(r)


def test_resultant_shared_root():
    a = Polynomial([Q(-1), Q(1)])
    assert resultant(a, a) == 0


def test_resultant_pi223_family():
    for aa in [Q(0), Q(1), Q(-1), Q(2, 3), Q(-7, 5), Q(123, 7)]:
        num = Polynomial([Q(1), aa + 1, Q(1, 3) + aa / 2])
        den = Polynomial([Q(1), aa, -aa / 2 - Q(1, 6)])
        assert resultant(num, den) == Q(1, 12)


def test_resultant_pi335_family():
    # a = 0 drops the denominator degree, so the family value needs a != 0
    for aa in [Q(-1, 50), Q(3, 11), Q(-13, 9)]:
        num = Polynomial([Q(1), 12 * aa + Q(3, 5), 6 * aa + Q(3, 20), aa + Q(1, 60)])
        den = Polynomial([Q(1), 12 * aa - Q(2, 5), Q(1, 20) - 6 * aa, aa])
        assert resultant(num, den) == Q(1, 8640)


def test_resultant_gcd_consistency():
    rng = random.Random(42)
    for _ in range(500):
        p = rand_poly(rng, rng.randint(1, 5), 6)
        q = rand_poly(rng, rng.randint(1, 5), 6)
        if rng.random() < 0.3:
            common = rand_poly(rng, rng.randint(1, 2), 4)
            p, q = p * common, q * common
        r = resultant(p, q)
        g = p.gcd(q)
        assert (r == 0) == (g.degree >= 1)


def test_isolate_real_roots_examples():
    roots = isolate_real_roots(Polynomial([Q(-2), Q(0), Q(1)]), RatInterval(Q(0), Q(2)))
    assert len(roots) == 1 and abs(float(roots[0]) - 1.41421) < 1e-4
    # index among all real roots of z^2-2 (the negative root comes first)
    assert roots[0].index == 2

    lin = Polynomial([Q(1), Q(-1, 6)])
    roots = isolate_real_roots(lin * lin * lin)
    assert len(roots) == 1
    assert roots[0].is_rational() and roots[0].as_fraction() == 6
    assert roots[0].multiplicity == 3


def test_isolate_complex_roots_examples():
    # Pade(3,3) denominator
    den = Polynomial([Q(1), Q(-1, 2), Q(1, 10), Q(-1, 120)])
    roots = isolate_complex_roots(den)
    assert len(roots) == 3
    assert roots[0].is_real and roots[0].matches_decimal("4.64437")
    pair = conjugate_pairs(roots)
    assert len(pair) == 1
    lo, hi = pair[0]
    assert abs(lo.approx_complex() - complex(3.67781, -3.50876)) < 1e-4
    assert abs(hi.approx_complex() - complex(3.67781, +3.50876)) < 1e-4

    roots = isolate_complex_roots(Polynomial([Q(1), Q(0), Q(1)]))
    assert [r.approx_complex() for r in roots] == pytest.approx([complex(0, -1), complex(0, 1)])

    # psi_32 denominator
    den32 = Polynomial([Q(1), Q(-150, 269), Q(8, 65), Q(-4, 327)])
    roots = isolate_complex_roots(den32)
    assert roots[0].is_real and roots[0].matches_decimal("3.71417")
    assert abs(roots[1].approx_complex() - complex(3.17368, -3.45514)) < 1e-4


def test_root_completeness_random():
    rng = random.Random(99)
    done = 0
    while done < 60:
        deg = rng.randint(1, 8)
        p = Polynomial.from_int_list(
            [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([1, 2, 3, 5, 7])]
        )
        if p.degree < 1:
            continue
        sf = p.squarefree_part()
        roots = isolate_complex_roots(p)
        nreal = sum(1 for r in roots if r.is_real)
        ncomp = sum(1 for r in roots if not r.is_real)
        assert nreal + ncomp == sf.degree
        assert ncomp % 2 == 0
        done += 1


def test_compare_and_equals():
    a = root_object([-2, 0, 1], 2)
    b = root_object([-4, 0, 2], 2)
    c = root_object([-3, 0, 1], 2)
    assert a.equals(b)
    assert a.compare(c) == -1
    assert c.compare(a) == 1
    assert a.compare_fraction(Q(2)) == -1
    assert a.compare_fraction(Q(1)) == 1
    assert algebraic_from_fraction(Q(5, 3)).compare_fraction(Q(5, 3)) == 0


def test_decimal_matching_truncation_semantics():
    r = root_object([-2, 0, 1], 2)  # 1.41421356...
    assert r.matches_decimal("1.41421")
    assert r.matches_decimal("1.4142135")
    assert not r.matches_decimal("1.41422")
    n = r.negate()
    assert n.matches_decimal("-1.41421")
    assert not n.matches_decimal("-1.41422")


def test_numberfield_basics():
    F = NumberField.quadratic(3)
    s3 = F.gen()
    x = 1 + s3
    assert (x * (s3 - 1)).to_fraction() == 2
    assert (1 / x * x - 1).is_zero()
    alg = x.to_algebraic()
    assert alg.is_root_of(Polynomial.from_int_list([-2, -2, 1]))
    assert alg.matches_decimal("2.732050")
    # sign of tiny combinations is exact
    tiny = x * x - 2 * x - 2  # exactly zero
    assert tiny.is_zero() and tiny.sign() == 0
    assert (x * x - 2 * x - Q(199, 100)).sign() == 1
    assert (x * x - 2 * x - Q(201, 100)).sign() == -1
