"""Resultants: scalar, and elimination of one variable from a parametrized
polynomial (the workhorse for annihilating polynomials of number-field
elements and for exact equidistance tests).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomials import Polynomial
from .rationals import Q


def det_gauss(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction Gaussian elimination with partial pivoting."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = Q(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def sylvester_matrix(p: Sequence, q: Sequence, dp: int, dq: int) -> list[list]:
    """Sylvester matrix for coefficient sequences (lowest first) with formal
    degrees dp, dq."""
    n = dp + dq
    rows = []
    pc = list(p) + [Q(0)] * (dp + 1 - len(p))
    qc = list(q) + [Q(0)] * (dq + 1 - len(q))
    for i in range(dq):
        row = [Q(0)] * n
        for j, c in enumerate(reversed(pc)):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [Q(0)] * n
        for j, c in enumerate(reversed(qc)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Exact resultant of two rational polynomials w.r.t. their variable."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    dp, dq = int(p.degree), int(q.degree)
    if dp == 0:
        return p.coeffs[0] ** dq
    if dq == 0:
        return q.coeffs[0] ** dp
    return det_gauss(sylvester_matrix(p.coeffs, q.coeffs, dp, dq))


def resultant_eliminate(f: Polynomial, g_coeffs: Sequence[Polynomial]) -> Polynomial:
    """Res_t(f(t), G(t, z)) where G = sum_i g_coeffs[i](z) * t^i.

    f has rational coefficients, g_coeffs are polynomials in z.  Computed by
    evaluation at rational sample points and Lagrange interpolation; the
    Sylvester determinant commutes with evaluation because the matrix is
    built from the formal t-degrees.
    """
    if f.is_zero():
        raise ValueError("resultant with zero polynomial")
    dT = len(g_coeffs) - 1
    while dT >= 0 and g_coeffs[dT].is_zero():
        dT -= 1
    if dT < 0:
        raise ValueError("G is identically zero")
    g_coeffs = list(g_coeffs[: dT + 1])
    df = int(f.degree)
    if dT == 0:
        return g_coeffs[0] ** df
    maxdz = max(int(g.degree) for g in g_coeffs if not g.is_zero())
    bound = df * maxdz + 1

    xs, ys = [], []
    z0 = 0
    while len(xs) < bound:
        z = Q(z0)
        gz = [g(z) for g in g_coeffs]
        rows = sylvester_matrix(f.coeffs, gz, df, dT)
        xs.append(z)
        ys.append(det_gauss(rows))
        z0 = -z0 + (1 if z0 <= 0 else 0)

    return lagrange_interpolate(xs, ys)


def lagrange_interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Polynomial:
    """Polynomial through the given points (Newton's divided differences)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner expansion of the Newton form
    poly = Polynomial(())
    for i in range(n - 1, -1, -1):
        poly = poly * Polynomial((-xs[i], Q(1))) + Polynomial((coef[i],))
    return poly


def annihilating_polynomial(f: Polynomial, rep: Polynomial) -> Polynomial:
    """Integer polynomial vanishing at rep(alpha) for every root alpha of f.

    Res_t(f(t), z - rep(t)): the classic elimination for images of algebraic
    numbers under polynomial maps.
    """
    # z - rep(t) as a polynomial in t: coefficient of t^0 is (z - rep_0),
    # coefficient of t^i is (-rep_i)
    g_coeffs = [Polynomial((-rep.coeff(0), Q(1)))]
    for i in range(1, len(rep.coeffs)):
        g_coeffs.append(Polynomial((-rep.coeffs[i],)))
    return resultant_eliminate(f, g_coeffs).primitive()


def root_sums_polynomial(p: Polynomial) -> Polynomial:
    """Polynomial whose roots include alpha_i + alpha_j for all root pairs of p
    (diagonal included): Res_t(p(t), p(z - t))."""
    # p(z - t) as polynomial in t with coefficients in z
    dz = int(p.degree)
    g: list[Polynomial] = [Polynomial(()) for _ in range(dz + 1)]
    # expand sum_k c_k (z - t)^k
    from math import comb

    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        for i in range(k + 1):
            # coefficient of t^i: c * C(k, i) * (-1)^i * z^(k-i)
            term = Polynomial.monomial(k - i, c * comb(k, i) * ((-1) ** i))
            g[i] = g[i] + term
    return resultant_eliminate(p, g).primitive()
