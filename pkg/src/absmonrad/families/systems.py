"""The polynomial inequality systems whose unique solutions pin down the
optimal single-pole functions at order 2 (s = 3 and s = 4), together with
exact feasibility evaluation and a deterministic uniqueness search.

All displayed inequalities are transcribed verbatim; a guard identity checks
that the leading k-coefficient of the lambda family equals the limit
condition, which catches transcription slips.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..kernel import Q


def _s3_ineqs(a: Fraction, c: Fraction) -> list[Fraction]:
    return [
        108 * a**2 - 90 * a - 216 * c + 13,
        108 * a**3 - 108 * a**2 + 42 * a + 108 * c - 5,
        108 * a**4 - 126 * a**3 + 72 * a**2 - 12 * a + Q(1, 2) + (108 * a - 18) * c,
    ]


def _s3_lambda(k: Fraction, a: Fraction, c: Fraction) -> Fraction:
    return (
        k**2 * (a**3 - 2 * a**2 + a / 2 + c)
        + k * (-36 * a**4 + 57 * a**3 - 8 * a**2 - 36 * a * c - a / 2 - 3 * c)
        + (216 * a**5 - 180 * a**4 + 26 * a**3 + 216 * a**2 * c + 36 * a * c + 2 * c)
    )


def _s3_limit(a: Fraction, c: Fraction) -> Fraction:
    return a**3 - 2 * a**2 + a / 2 + c


def _s4_ineqs(a: Fraction, c: Fraction, d: Fraction) -> list[Fraction]:
    q2 = 6 * a**2 - 4 * a + Q(1, 2)
    e1 = 1 - 8 * (1 - 4 * a) + 64 * q2 - 512 * c + 4096 * d
    f1 = 1 - 4 * a - 16 * q2 + 192 * c - 2048 * d
    g1 = 2 * q2 - 48 * c + 768 * d
    e2 = (8 * a + 1) * f1 + 4 * a * e1
    e3 = 10 * a**2 * e1 + 4 * a * (8 * a + 1) * f1 + Q(1, 2) * (8 * a + 1) ** 2 * g1
    e4 = (
        10 * a**2 * (8 * a + 1) * f1
        + 2 * a * (8 * a + 1) ** 2 * g1
        + Q(1, 6) * (8 * a + 1) ** 3 * (6 * c - 192 * d)
        + 20 * a**3 * e1
    )
    return [e1, e2, e3, e4]


def _s4_lambda(k: Fraction, a: Fraction, c: Fraction, d: Fraction) -> Fraction:
    return (
        k**3 * (6 * a**4 - 6 * a**3 + a**2 + 2 * a * c + 2 * d)
        + k**2
        * (-384 * a**5 + 324 * a**4 - 42 * a**3 - 144 * a**2 * c - 6 * a * c - 192 * a * d - 12 * d)
        + k
        * (
            4608 * a**6
            - 3072 * a**5
            + 618 * a**4
            + 2304 * a**3 * c
            - 36 * a**3
            + 144 * a**2 * c
            + 4608 * a**2 * d
            - a**2
            + 4 * a * c
            + 576 * a * d
            + 22 * d
        )
        + (
            4608 * a**6
            - 2688 * a**5
            - 6144 * a**4 * c
            + 300 * a**4
            - 24576 * a**3 * d
            - 4608 * a**2 * d
            - 384 * a * d
            - 12 * d
        )
    )


def _s4_limit(a: Fraction, c: Fraction, d: Fraction) -> Fraction:
    return 6 * a**4 - 6 * a**3 + a**2 + 2 * a * c + 2 * d


@dataclass(frozen=True)
class FeasibilitySystem:
    id: str  # "S3P2" or "S4P2"
    s: int
    arity: int
    known_solution: tuple
    point_conditions: Callable
    lam: Callable
    limit_condition: Callable

    def guard_identity(self, samples: int = 25) -> bool:
        """Leading k-coefficient of lambda == limit condition (transcription
        guard; exact polynomial identity checked on many rational points)."""
        import random

        rng = random.Random(1)
        deg = self.s - 1
        for _ in range(samples):
            pt = tuple(Q(rng.randint(-99, 99), rng.randint(1, 13)) for _ in range(self.arity))
            # leading coefficient via finite differences of order deg in k
            vals = [self.lam(Q(k), *pt) for k in range(deg + 1)]
            lead = Q(0)
            import math

            for j, v in enumerate(vals):
                lead += v * Q((-1) ** (deg - j) * math.comb(deg, j))
            lead /= Q(math.factorial(deg))
            if lead != self.limit_condition(*pt):
                return False
        return True


S3P2 = FeasibilitySystem("S3P2", 3, 2, (Q(1, 6), Q(1, 216)), _s3_ineqs, _s3_lambda, _s3_limit)
S4P2 = FeasibilitySystem("S4P2", 4, 3, (Q(1, 8), Q(1, 128), Q(1, 4096)), _s4_ineqs, _s4_lambda, _s4_limit)


@dataclass
class FeasibilityReport:
    point: tuple
    satisfied: bool
    point_values: list
    lambda_failures: list  # (k, value) with value < 0
    limit_value: Fraction

    def first_violation(self) -> Optional[str]:
        for i, v in enumerate(self.point_values):
            if v < 0:
                return f"point condition {i} = {v}"
        if self.limit_value < 0:
            return f"limit condition = {self.limit_value}"
        if self.lambda_failures:
            k, v = self.lambda_failures[0]
            return f"lambda({k}) = {v}"
        return None


def feasibility_check(sys: FeasibilitySystem, point: Sequence[Fraction], k_list: Sequence[int]) -> FeasibilityReport:
    """Exact evaluation of every displayed inequality at a rational point."""
    point = tuple(Q(x) for x in point)
    if len(point) != sys.arity:
        raise ValueError(f"{sys.id} takes {sys.arity} coordinates")
    pv = sys.point_conditions(*point)
    lamfail = []
    for k in k_list:
        if k < sys.s:
            raise ValueError("lambda applies to k >= s")
        v = sys.lam(Q(k), *point)
        if v < 0:
            lamfail.append((k, v))
    lim = sys.limit_condition(*point)
    ok = all(v >= 0 for v in pv) and not lamfail and lim >= 0
    return FeasibilityReport(point, ok, pv, lamfail, lim)


def violation_witness(sys: FeasibilitySystem, point: Sequence[Fraction], k_budget: int) -> Optional[str]:
    """Cheapest refutation of a point: a violated point/limit condition or the
    first k <= k_budget with lambda(k) < 0.  None when nothing violates."""
    point = tuple(Q(x) for x in point)
    pv = sys.point_conditions(*point)
    for i, v in enumerate(pv):
        if v < 0:
            return f"point[{i}]"
    lim = sys.limit_condition(*point)
    if lim < 0:
        return "limit"
    for k in range(sys.s, k_budget + 1):
        if sys.lam(Q(k), *point) < 0:
            return f"lambda({k})"
    return None


@dataclass
class UniquenessReport:
    system: str
    n_points: int
    survivors: list
    witness_histogram: dict

    @property
    def only_known_solution_survives(self) -> bool:
        return all(s == "known-solution" for _, s in self.survivors)


def _fib_lattice(n: int, dims: int) -> list[tuple[Fraction, ...]]:
    """Deterministic rank-1 lattice on [0,1)^dims (golden-ratio style with
    rational generators; reproducible by construction)."""
    gens = [Q(1), Q(377, 610), Q(233, 610), Q(144, 610)]
    pts = []
    for i in range(1, n + 1):
        coords = []
        for d in range(dims):
            v = (i * gens[d]) % 1 if d else Q(i, n)
            coords.append(v)
        pts.append(tuple(coords))
    return pts


def uniqueness_search(
    sys: FeasibilitySystem,
    ranges: Sequence[tuple[Fraction, Fraction]],
    n_points: int,
    k_budget: int,
) -> UniquenessReport:
    """Evaluate the system on a deterministic lattice plus the known solution.

    Every sampled point other than the known solution must exhibit a violated
    inequality or a lambda(k) < 0 within the budget; leftovers are reported as
    survivors (evidence, not proof).
    """
    if len(ranges) != sys.arity:
        raise ValueError("range per coordinate required")
    pts = []
    for coords in _fib_lattice(n_points, sys.arity):
        pt = tuple(lo + (hi - lo) * t for t, (lo, hi) in zip(coords, ranges))
        if pt[0] <= 0:
            continue  # the positivity of the pole parameter is a hypothesis
        pts.append(pt)
    pts.append(sys.known_solution)

    survivors = []
    hist: dict = {}
    for pt in pts:
        w = violation_witness(sys, pt, k_budget)
        if w is None:
            tag = "known-solution" if pt == sys.known_solution else "unexplained"
            survivors.append((pt, tag))
        else:
            key = w.split("(")[0]
            hist[key] = hist.get(key, 0) + 1
    return UniquenessReport(sys.id, len(pts), survivors, hist)


# -- branch bounds of the two c/d regions in the s = 4 analysis --------------


def s4_branch_first(a: Fraction) -> tuple[tuple[Fraction, Fraction], Callable]:
    """(c-range, d-range(c)) of the first branch of admissible (c, d)."""
    c_lo = (-768 * a**3 + 768 * a**2 - 160 * a + 7) / 192
    c_hi = (-1536 * a**3 + 1728 * a**2 - 424 * a + 25) / 512

    def d_range(c: Fraction):
        d_lo = (-6 * a**4 + 6 * a**3 - a**2 - 2 * a * c) / 2
        d_hi = (768 * a**3 - 512 * a**2 - 512 * a * c + 104 * a + 192 * c - 7) / 2048
        return d_lo, d_hi

    return (c_lo, c_hi), d_range


def s4_branch_second(a: Fraction) -> tuple[tuple[Fraction, Fraction], Callable]:
    c_lo = (-1536 * a**3 + 1728 * a**2 - 424 * a + 25) / 512
    c_hi = (192 * a**2 - 104 * a + 11) / 128

    def d_range(c: Fraction):
        d_lo = (-384 * a**2 + 224 * a + 512 * c - 25) / 4096
        d_hi = (768 * a**3 - 512 * a**2 - 512 * a * c + 104 * a + 192 * c - 7) / 2048
        return d_lo, d_hi

    return (c_lo, c_hi), d_range
