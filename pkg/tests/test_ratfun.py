"""Rational-function calculus tests."""

import random
from fractions import Fraction as Q

import pytest

from absmonrad.kernel import Polynomial
from absmonrad.kernel.numberfield import NumberField
from absmonrad.ratfun import (
    PoleAtOrigin,
    RationalFunction,
    SdirkForm,
    check_recomposition,
    kth_derivative,
    order_of_accuracy,
    parse_ratfun_text,
    partial_fractions,
    reduce,
    sdirk_from_rational_function,
    sdirk_kth_derivative,
    taylor_prefix,
)


def pade(m, n):
    import math

    num = [Q(math.factorial(m + n - j) * math.factorial(m), math.factorial(m + n) * math.factorial(j) * math.factorial(m - j)) for j in range(m + 1)]
    den = [Q((-1) ** j * math.factorial(m + n - j) * math.factorial(n), math.factorial(m + n) * math.factorial(j) * math.factorial(n - j)) for j in range(n + 1)]
    return RationalFunction.from_coeff_lists(num, den)


PSI32 = RationalFunction.from_coeff_lists(
    [1, Q(119, 269), Q(2289, 34970), Q(1246, 384649)],
    [1, Q(-150, 269), Q(8, 65), Q(-4, 327)],
)


def test_reduce_cancellation_flag():
    num = Polynomial([Q(-1), Q(0), Q(1)])
    den = Polynomial([Q(-1), Q(1)]) * Polynomial([Q(1), Q(-1, 2)])
    r = reduce(RationalFunction(num, den))
    assert r.cancelled
    assert r.num == Polynomial([Q(1), Q(1)])
    assert r.den == Polynomial([Q(1), Q(-1, 2)])


def test_reduce_idempotent_and_value_preserving():
    rng = random.Random(11)
    for _ in range(40):
        num = Polynomial([Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)])
        den = Polynomial([Q(1)] + [Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)])
        if den.is_zero() or num.is_zero():
            continue
        f = RationalFunction(num, den)
        r = reduce(f)
        assert reduce(r) is r or reduce(r).num == r.num
        for x in (Q(1, 3), Q(-2, 5), Q(4)):
            try:
                a = f.eval_exact(x)
                b = r.eval_exact(x)
            except ZeroDivisionError:
                continue
            assert a == b


def test_reduce_pihat33_common_root_drops_to_psi232():
    # a = (3 - sqrt3)/6 makes the cubic SDIRK member collapse to psi_232
    F = NumberField.quadratic(3)
    s3 = F.gen()
    a = (3 - s3) / 6
    num = Polynomial(
        [
            F.one(),
            1 - 3 * a,
            (6 * a * a - 6 * a + 1) * Q(1, 2),
            (-6 * a**3 + 18 * a * a - 9 * a + 1) * Q(1, 6),
        ]
    )
    den = Polynomial([F.one(), -a]) ** 3
    r = reduce(RationalFunction(num, den, field=F))
    assert r.cancelled
    assert r.den.degree == 2 and r.num.degree == 2
    # surviving function is psi_232 = ((sqrt3-1)/6 z^2 + z/sqrt3 + 1)/(1 - (3-sqrt3)/6 z)^2
    lin = Polynomial([F.one(), -(3 - s3) / 6])
    assert r.den == lin * lin
    assert r.num.coeffs[1] == 1 / s3
    assert r.num.coeffs[2] == (s3 - 1) / 6


def test_order_of_accuracy_values():
    assert order_of_accuracy(RationalFunction.from_coeff_lists([1, Q(1, 2)], [1, Q(-1, 2)])) == 2
    assert order_of_accuracy(pade(3, 3)) == 6
    assert order_of_accuracy(pade(2, 2)) == 4
    assert order_of_accuracy(PSI32) == 2


def test_order_of_accuracy_pole_at_origin():
    with pytest.raises(PoleAtOrigin):
        order_of_accuracy(RationalFunction.from_coeff_lists([1], [0, 1]))


def test_taylor_derivative_consistency():
    import math

    rng = random.Random(3)
    for _ in range(25):
        num = Polynomial([Q(1)] + [Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])
        den = Polynomial([Q(1)] + [Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])
        f = reduce(RationalFunction(num, den))
        ts = taylor_prefix(f, 12).coefficients
        for k in (0, 1, 5, 9):
            assert ts[k] * math.factorial(k) == kth_derivative(f, k).eval_exact(Q(0))


def test_kth_derivative_trivia():
    one = RationalFunction.from_coeff_lists([1], [1])
    assert kth_derivative(one, 1).num.is_zero()


def test_pi335_tenth_derivative_sign_change():
    # a = -1/50: psi^(10)(-2) < 0 < psi^(10)(0)
    a = Q(-1, 50)
    f = RationalFunction.from_coeff_lists(
        [1, 12 * a + Q(3, 5), 6 * a + Q(3, 20), a + Q(1, 60)],
        [1, 12 * a - Q(2, 5), Q(1, 20) - 6 * a, a],
    )
    d10 = kth_derivative(reduce(f), 10)
    assert d10.eval_exact(Q(-2)) < 0 < d10.eval_exact(Q(0))


def test_sdirk_closed_form_matches_symbolic():
    rng = random.Random(20240902)
    done = 0
    while done < 200:
        s = rng.randint(1, 4)
        a = Q(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([1, -1])
        P = Polynomial([Q(1)] + [Q(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(s)])
        form = SdirkForm(P, a, s)
        k = rng.randint(0, 12)
        x = Q(rng.randint(-20, 20), rng.randint(1, 6))
        if Polynomial([Q(1), -a])(x) == 0:
            continue
        exact = sdirk_kth_derivative(form, k, x)
        sym = kth_derivative(form.to_rational_function(), k).eval_exact(x)
        assert exact == sym
        done += 1


def test_sdirk_closed_form_quadratic_field_point():
    # a = (2-sqrt2)/4, x = -2-sqrt8: psi^(k)(x) = (4/3)(3/2-sqrt2)^k k!(k-1)(k-2)
    import math

    F = NumberField.quadratic(2)
    s2 = F.gen()
    a = (2 - s2) / 4
    num = Polynomial(
        [
            F.one(),
            1 - 3 * a,
            (6 * a * a - 6 * a + 1) * Q(1, 2),
            (-6 * a**3 + 18 * a * a - 9 * a + 1) * Q(1, 6),
        ]
    )
    form = SdirkForm(num, a, 3, F)
    x = -2 - 2 * s2
    for k in range(1, 8):
        got = sdirk_kth_derivative(form, k, x)
        want = Q(4, 3) * (Q(3, 2) - s2) ** k * Q(math.factorial(k) * (k - 1) * (k - 2))
        assert (got - want).is_zero()
    # psi(x) = 1 - 2 sqrt2 / 3
    got0 = sdirk_kth_derivative(form, 0, x)
    assert (got0 - (1 - 2 * s2 / 3)).is_zero()


def test_sdirk_recognition():
    f = SdirkForm(Polynomial([Q(1), Q(1, 2)]), Q(1, 4), 2).to_rational_function()
    g = sdirk_from_rational_function(f)
    assert g is not None and g.s == 2 and g.a == Q(1, 4)
    assert sdirk_from_rational_function(pade(3, 3)) is None


def test_psi232_derivative_closed_form():
    # psi_{a*23}^(k)(x) = 6 k!((12k-3)+sqrt3(7k-2)+(3+2sqrt3)x)/(sqrt3+3-x)^{k+2}
    import math

    F = NumberField.quadratic(3)
    s3 = F.gen()
    a = (3 - s3) / 6  # 1 - a*2s... the psi_232 pole parameter
    num = Polynomial([F.one(), 1 / s3, (s3 - 1) / 6])
    form = SdirkForm(num, a, 2, F)
    rng = random.Random(14)
    for k in range(1, 11):
        x = Q(rng.randint(-40, 0), rng.randint(1, 7))
        got = sdirk_kth_derivative(form, k, x)
        denom = (s3 + 3 - x) ** (k + 2)
        want = 6 * Q(math.factorial(k)) * ((12 * k - 3) + s3 * (7 * k - 2) + (3 + 2 * s3) * x) / denom
        assert (got - want).is_zero()


def test_partial_fractions_pade33():
    pf = partial_fractions(reduce(pade(3, 3)), Q(1, 10**8))
    assert pf.constant.contains(Q(-1))
    dom = pf.dominant_term()
    assert dom.is_positive_real and dom.order == 1
    assert abs(float(dom.coefficients[0].re.mid) - 57.2025) < 1e-3
    # the coefficient at the lower pole alpha_1 = 3.67781 - 3.50876i is
    # c_1 ~ -16.6012 + 20.5831i; the upper pole carries its conjugate
    lower = [t for t in pf.terms if not t.is_real and t.conjugate_of is not None][0]
    assert abs(float(lower.coefficients[0].re.mid) + 16.6012) < 1e-3
    assert abs(float(lower.coefficients[0].im.mid) - 20.5831) < 1e-3
    assert check_recomposition(pade(3, 3), pf)


def test_partial_fractions_psi32():
    pf = partial_fractions(reduce(PSI32), Q(1, 10**8))
    assert pf.constant.contains(Q(-203721, 769298))
    dom = pf.dominant_term()
    assert abs(float(dom.coefficients[0].re.mid) - 24.8122) < 1e-3
    assert dom.pole_box.re.contains(Q(371417, 100000)) or abs(float(dom.pole_box.re.mid) - 3.71417) < 1e-4
    assert check_recomposition(PSI32, pf)


def test_partial_fractions_pihat334_member1():
    # single real pole of order 3; c1 ~ 304.856, c2 ~ -3243.10, c3 ~ 11865.6
    from absmonrad.families import finite_class_members, FamilyId

    members = finite_class_members(FamilyId("PI_HAT", 3, 4))
    f = members[0]
    pf = partial_fractions(reduce(f), Q(1, 10**6))
    dom = pf.dominant_term()
    assert dom.order == 3
    c1, c2, c3 = (float(c.re.mid) for c in dom.coefficients)
    assert abs(c1 - 304.856) < 1e-2
    assert abs(c2 + 3243.10) < 1e-1
    assert abs(c3 - 11865.6) < 1e-0
    assert abs(float(dom.pole_box.re.mid) - 7.75877) < 1e-4


def test_partial_fractions_rejects_improper():
    f = RationalFunction.from_coeff_lists([1, 1, 1], [1, 1])
    with pytest.raises(ValueError):
        partial_fractions(reduce(f), Q(1, 100))


def test_recomposition_on_random_proper_functions():
    rng = random.Random(8)
    done = 0
    while done < 6:
        den = Polynomial([Q(1)] + [Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)])
        num = Polynomial([Q(1)] + [Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)])
        if den.degree < 3:
            continue
        f = reduce(RationalFunction(num, den))
        if f.num.degree > f.den.degree or f.den.degree < 1:
            continue
        if f.num.gcd(f.den).degree >= 1:
            continue
        pf = partial_fractions(f, Q(1, 10**6))
        assert check_recomposition(f, pf)
        done += 1


def test_text_roundtrip():
    f = RationalFunction.from_coeff_lists([1, Q(1, 2)], [1, Q(-1, 2)])
    g = parse_ratfun_text(f.format_text())
    assert g.num == f.num and g.den == f.den
    s = SdirkForm(Polynomial([Q(1), Q(1, 2)]), Q(1, 4), 2)
    t = parse_ratfun_text(s.format_text())
    assert isinstance(t, SdirkForm) and t.a == Q(1, 4) and t.s == 2
    with pytest.raises(ValueError):
        parse_ratfun_text("garbage{}")
