"""Runge-Kutta side: exact stability functions through characteristic
polynomials, and the method's own radius of absolute monotonicity from the
augmented-matrix feasibility conditions.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..kernel import Polynomial, Q, RatInterval
from ..ratfun import RationalFunction, reduce
from .radius import RadiusBracket, compute_R


@dataclass(frozen=True)
class RKMethod:
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    @staticmethod
    def make(A, b) -> "RKMethod":
        A = tuple(tuple(Q(x) for x in row) for row in A)
        b = tuple(Q(x) for x in b)
        s = len(b)
        if len(A) != s or any(len(r) != s for r in A):
            raise ValueError("inconsistent tableau dimensions")
        return RKMethod(A, b)

    @property
    def s(self) -> int:
        return len(self.b)

    def format_text(self) -> str:
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.A)
        bs = ",".join(str(x) for x in self.b)
        return f"rk{{ A=[{rows}], b=[{bs}] }}"


@dataclass(frozen=True)
class KMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def of(m: RKMethod) -> "KMatrix":
        s = m.s
        rows = []
        for i in range(s):
            rows.append(tuple(m.A[i]) + (Q(0),))
        rows.append(tuple(m.b) + (Q(0),))
        return KMatrix(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.rows)


def parse_rk_text(text: str) -> RKMethod:
    m = _re.fullmatch(r"\s*rk\{\s*A=\[(.*)\]\s*,\s*b=\[([^\]]*)\]\s*\}\s*", text, _re.S)
    if not m:
        raise ValueError(f"not an rk{{...}} literal: {text[:50]!r}")
    rows_text = m.group(1)
    rows = _re.findall(r"\[([^\]]*)\]", rows_text)
    A = [[Q(t) for t in row.split(",") if t.strip()] for row in rows]
    b = [Q(t) for t in m.group(2).split(",") if t.strip()]
    return RKMethod.make(A, b)


def _char_poly(M: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients of det(lambda I - M) via Faddeev-LeVerrier (exact)."""
    n = len(M)
    cs = [Q(1)]  # leading first
    Mk = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # Mk = M * (previous) + c_{k-1} I applied below
        Mk = _mat_mul(M, Mk)
        tr = sum((Mk[i][i] for i in range(n)), Q(0))
        ck = -tr / k
        cs.append(ck)
        for i in range(n):
            Mk[i][i] += ck
    return cs  # lambda^n + c1 lambda^(n-1) + ... + cn


def _mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Q(0)) for j in range(n)] for i in range(n)]


def _det_I_minus_zM(M: list[list[Fraction]]) -> Polynomial:
    """det(I - z M) = z^n charpoly(1/z) reversed: sum_k c_k z^k."""
    n = len(M)
    cs = _char_poly(M)  # leading-first coefficients of det(lambda I - M)
    # det(I - zM) = z^n det((1/z) I - M) = sum_{k} cs[k] z^k  (cs[0] = 1)
    return Polynomial(tuple(cs[k] for k in range(n + 1)))


def stability_function(m: RKMethod) -> RationalFunction:
    """det(I - zA + z 1 b^T) / det(I - zA), exactly, reduced."""
    s = m.s
    A = [list(row) for row in m.A]
    N = [[A[i][j] - m.b[j] for j in range(s)] for i in range(s)]
    num = _det_I_minus_zM(N)
    den = _det_I_minus_zM(A)
    return reduce(RationalFunction(num, den))


# ---------------------------------------------------------------------------
# the SSP coefficient R(A, b)
# ---------------------------------------------------------------------------


def _feasible(K: KMatrix, rho: Fraction) -> bool:
    """(I + rho K) invertible, rho K (I + rho K)^{-1} >= 0 componentwise and
    its row sums at most 1 (exact rational linear algebra)."""
    n = K.n
    M = [[(Q(1) if i == j else Q(0)) + rho * K.rows[i][j] for j in range(n)] for i in range(n)]
    inv = _invert(M)
    if inv is None:
        return False
    P = [[rho * sum((K.rows[i][k] * inv[k][j] for k in range(n)), Q(0)) for j in range(n)] for i in range(n)]
    for row in P:
        total = Q(0)
        for x in row:
            if x < 0:
                return False
            total += x
        if total > 1:
            return False
    return True


def _invert(M) -> Optional[list[list[Fraction]]]:
    n = len(M)
    aug = [list(M[i]) + [Q(1) if j == i else Q(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass
class SSPResult:
    kind: str  # "interval" | "infinite" | "zero"
    value: Optional[RatInterval] = None  # [largest feasible tried, smallest infeasible tried]
    note: str = ""

    def contains_value(self, v: Fraction) -> bool:
        return self.kind == "interval" and self.value.contains(v)


def ssp_coefficient(m: RKMethod, tol: Fraction = Q(1, 10**6), ladder_cap: int = 40) -> SSPResult:
    """sup of the feasible rho-prefix, bracketed by exact feasibility tests.

    The feasible set is assumed (and spot-verified) to be an interval from 0;
    unboundedness is detected by a geometric ladder with a monotone-entry
    check and reported as an explicit flag."""
    K = KMatrix.of(m)
    if not _feasible(K, Q(0)):
        raise AssertionError("rho = 0 must always be feasible")
    # find an infeasible upper end by doubling
    hi = None
    r = Q(1)
    lo = Q(0)
    for _ in range(ladder_cap):
        if _feasible(K, r):
            lo = r
            r *= 2
        else:
            hi = r
            break
    if hi is None:
        # monotone-limit heuristic on the entries of rho K (I + rho K)^{-1}
        return SSPResult("infinite", note=f"feasible at the geometric ladder up to 2^{ladder_cap}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _feasible(K, mid):
            lo = mid
        else:
            hi = mid
    # verify the prefix assumption at a few points below lo
    for frac in (Q(1, 3), Q(2, 3), Q(9, 10)):
        if lo > 0 and not _feasible(K, lo * frac):
            raise AssertionError("feasible set is not a prefix interval")
    if lo == 0:
        return SSPResult("zero", RatInterval(Q(0), hi), note="only rho = 0 is feasible within tolerance")
    return SSPResult("interval", RatInterval(lo, hi))


@dataclass
class RInequalityReport:
    method_side: SSPResult
    function_side: RadiusBracket
    consistent: bool
    note: str = ""


def check_R_inequality(m: RKMethod, tol: Fraction = Q(1, 10**6), k_max: int = 120) -> RInequalityReport:
    """R(A,b) <= R(psi) verified at bracket precision."""
    rab = ssp_coefficient(m, tol)
    psi = stability_function(m)
    rpsi = compute_R(psi, tol, k_max)
    if rpsi.kind == "infinite":
        return RInequalityReport(rab, rpsi, True, "function side unbounded")
    if rpsi.kind == "zero":
        ok = rab.kind == "zero" or (rab.kind == "interval" and rab.value.lo <= tol)
        return RInequalityReport(rab, rpsi, ok, "function side zero")
    if rab.kind == "infinite":
        return RInequalityReport(rab, rpsi, False, "method side unbounded but function side finite")
    lo_method = rab.value.lo if rab.value else Q(0)
    return RInequalityReport(rab, rpsi, lo_method <= rpsi.hi, "")
