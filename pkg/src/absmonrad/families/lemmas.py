"""Exact checkers for the auxiliary lemmas: the trace inequality for
nonnegative matrices, coefficient bounds for polynomials absolutely monotonic
at a point, the derivative linear-combination identity, and the uniqueness
statement for 3 <= s <= 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..kernel import Polynomial, Q

Matrix = Sequence[Sequence[Fraction]]


def _mat_mul(A: Matrix, B: Matrix) -> list[list[Fraction]]:
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Q(0)) for j in range(n)] for i in range(n)]


def _trace(A: Matrix) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), Q(0))


@dataclass
class TraceReport:
    holds: bool
    lhs: Fraction  # s^(n-1) * tr(A^n)
    rhs: Fraction  # tr(A)^n
    equality: bool
    diagonal_constant: Optional[bool]
    offdiag_products_vanish: Optional[bool]


def trace_inequality_check(A: Matrix, n: int) -> TraceReport:
    """s^(n-1) tr(A^n) >= tr(A)^n for componentwise nonnegative square A,
    with the equality structure of the lemma checked when equality holds."""
    if n < 2:
        raise ValueError("n >= 2")
    s = len(A)
    A = [[Q(x) for x in row] for row in A]
    for row in A:
        if len(row) != s:
            raise ValueError("matrix must be square")
        for x in row:
            if x < 0:
                raise ValueError("matrix must be componentwise nonnegative")
    P = A
    for _ in range(n - 1):
        P = _mat_mul(P, A)
    lhs = Q(s) ** (n - 1) * _trace(P)
    rhs = _trace(A) ** n
    eq = lhs == rhs
    diag_const = None
    offdiag = None
    if eq:
        diag_const = all(A[k][k] == A[0][0] for k in range(s))
        if n == 2:
            offdiag = all(A[i][j] * A[j][i] == 0 for i in range(s) for j in range(s) if i != j)
    return TraceReport(lhs >= rhs, lhs, rhs, eq, diag_const, offdiag)


@dataclass
class PolyLemmaInput:
    s: int
    r: Fraction
    P: Polynomial

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("r must be positive")
        if self.P.constant != 1:
            raise ValueError("P(0) = 1 required")
        if self.P.degree > self.s:
            raise ValueError("deg P <= s required")

    @property
    def gammas(self) -> list[Fraction]:
        return [
            self.P.derivative(k)(-self.r) * self.r**k / math.factorial(k)
            for k in range(self.s + 1)
        ]


@dataclass
class BoundsReport:
    applicable: bool
    bounds_hold: Optional[bool]
    attained_indices: list
    uniqueness_confirmed: Optional[bool]
    gamma_sum_is_one: Optional[bool]


def coefficient_bounds_check(inp: PolyLemmaInput) -> BoundsReport:
    """0 <= a_n <= binom(s,n)/r^n under nonnegative derivatives at -r; if a
    bound is attained the polynomial must be (1+z/r)^s."""
    gam = inp.gammas
    if any(g < 0 for g in gam):
        return BoundsReport(False, None, [], None, None)
    s, r = inp.s, inp.r
    holds = True
    attained = []
    for nn in range(1, s + 1):
        an = inp.P.coeff(nn)
        ub = Q(math.comb(s, nn)) / r**nn
        if not (0 <= an <= ub):
            holds = False
        if an == ub:
            attained.append(nn)
    unique = None
    if attained:
        binom = Polynomial([Q(1), 1 / r]) ** s
        unique = inp.P == binom
    return BoundsReport(True, holds, attained, unique, sum(gam) == 1)


def linear_combination_identity_check(s: int, P: Polynomial) -> bool:
    """sum_k (2s)^k (s-k)(s-k-1)/(k! s(s-1)) P^(k)(-2s) == 1 - 4 a_1 + 8s/(s-1) a_2."""
    if s < 2:
        raise ValueError("s >= 2")
    if P.degree > s or P.constant != 1:
        raise ValueError("P must have P(0)=1 and degree <= s")
    lhs = Q(0)
    for k in range(s + 1):
        w = Q((2 * s) ** k * (s - k) * (s - k - 1), math.factorial(k) * s * (s - 1))
        lhs += w * P.derivative(k)(Q(-2 * s))
    rhs = 1 - 4 * P.coeff(1) + Q(8 * s, s - 1) * P.coeff(2)
    return lhs == rhs


@dataclass
class Lemma25Report:
    hypotheses_hold: bool
    conclusion_holds: Optional[bool]
    alarm: bool  # hypotheses hold but the conclusion fails


def lemma25_check(s: int, P: Polynomial) -> Lemma25Report:
    """For 3 <= s <= 8: nonnegative derivatives at -2s plus the nonlinear
    coefficient relation force P = (1 + z/(2s))^s."""
    if not 3 <= s <= 8:
        raise ValueError("the uniqueness lemma covers 3 <= s <= 8")
    if P.degree > s or P.constant != 1:
        return Lemma25Report(False, None, False)
    x = Q(-2 * s)
    hyp = all(P.derivative(k)(x) >= 0 for k in range(s + 1))
    a1, a2 = P.coeff(1), P.coeff(2)
    hyp = hyp and (Q(1, 2) * (a1 * a1 - (1 - a1) ** 2 / s) >= a2)
    if not hyp:
        return Lemma25Report(False, None, False)
    want = Polynomial([Q(1), Q(1, 2 * s)]) ** s
    ok = P == want
    return Lemma25Report(True, ok, not ok)
