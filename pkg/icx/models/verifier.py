"""
Verification suites for the finite facts behind the lower-bound argument.

Every set-valued claim is re-derived from the table and compared with the
published value; claims about all n are checked up to the scan limit.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Literal, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field
from scipy import integrate

from icx.config import SIGMA
from icx.models.defects import (
    CensusMatrix,
    ClassificationParams,
    DefectArrays,
    census,
    interval_index,
    is_add_irreducible,
    is_mult_irreducible,
)
from icx.table.complexity_table import ComplexityTable
from icx.util import logging

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report-only"

DEFAULT_SCAN_LIMIT = 3 ** 13
# products of two class-1/2 leaders reach 256^2, and U_N(3, m) is listed up to m = 10
MIN_SCAN_LIMIT = 3 ** 11

LEADERS_D1 = [2, 3, 4, 8, 16]
LEADERS_D2 = [5, 7, 10, 14, 19, 20, 28, 32, 40, 64, 128, 256]
SET_Z = [1, 6, 8, 9, 12, 14, 15, 16, 18, 20, 21, 24, 26, 27]
SET_A = [3, 5, 7, 10, 19, 28]
SET_V = [1, 2, 4, 8, 16]
U_N3 = [18, 36, 55, 73, 89, 105, 120]
Q_PUBLISHED = {3: 8, 4: 9, 5: 1, 6: 0, 7: 0, 8: 0, 9: 0, 10: 0}


class CheckResult(BaseModel):
    check_id: str
    description: str
    expected: Any = None
    actual: Any = None
    status: Literal["pass", "fail", "report-only"]
    witnesses: List[Any] = Field(default_factory=list)


class VerificationReport(BaseModel):
    suite: str
    sigma: float
    scan_limit: Optional[int] = None
    checks: List[CheckResult]
    settled: List[Dict] = Field(default_factory=list)
    generated_at: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(check.status != FAIL for check in self.checks)

    def failures(self) -> List[str]:
        return [check.check_id for check in self.checks if check.status == FAIL]

    def records(self) -> List[Dict]:
        return [
            {"check_id": c.check_id, "status": c.status, "description": c.description,
             "expected": c.expected, "actual": c.actual}
            for c in self.checks
        ]


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def window_maximum(values: List[int], ratio: int = 4):
    """
    Largest number of values inside an interval (x, ratio*x], with the
    leftmost maximizing window (s/ratio, s].
    """
    ordered = sorted(values)
    best, witness = 0, None
    for s in ordered:
        inside = [v for v in ordered if ratio * v > s and v <= s]
        if len(inside) > best:
            best, witness = len(inside), (s / ratio, s, inside)
    return best, witness


def smooth_part(n: int):
    """(t, s, rest) with n = 2^t * 3^s * rest."""
    t = s = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    while n % 3 == 0:
        n //= 3
        s += 1
    return t, s, n


class PaperSetVerifier:
    """
    Runs checks (a)-(q) against one table.

    Args:
        table: Complexity table with limit >= scan_limit
        sigma: Class step
        scan_limit: Largest n enumerated
    """

    def __init__(self, table: ComplexityTable, sigma: float = SIGMA,
                 scan_limit: int = DEFAULT_SCAN_LIMIT):
        if scan_limit < MIN_SCAN_LIMIT:
            raise ValueError(f"the set suite needs scan_limit >= {MIN_SCAN_LIMIT}, got {scan_limit}")
        table.require(scan_limit, "verification suite")
        self.table = table
        self.sigma = sigma
        self.scan_limit = scan_limit
        self.arrays = DefectArrays(table, scan_limit, sigma)
        self.m_top = interval_index(scan_limit + 1) - 1
        k_top = int(self.arrays.classes[1:].max())
        self.census = census(table, sigma, k_top, self.m_top, arrays=self.arrays)
        self.d1 = self.arrays.members(1)
        self.d2 = self.arrays.members(2)
        self.small = sorted(self.d1 + self.d2)

    def checks(self) -> Dict[str, Callable[[], CheckResult]]:
        return {
            "a": self.check_leaders_d1,
            "b": self.check_leaders_d2,
            "c": self.check_u_b2,
            "d": self.check_t_sigma,
            "e": self.check_z,
            "f": self.check_a,
            "g": self.check_v,
            "h": self.check_window,
            "i": self.check_q,
            "j": self.check_u_n3,
            "k": self.check_four,
            "l": self.check_u_tilde,
            "m": self.check_case_one,
            "n": self.check_first_window,
            "o": self.check_base_case,
            "p": self.check_small_defect_shape,
            "q": self.check_chain,
        }

    def check_leaders_d1(self) -> CheckResult:
        return CheckResult(
            check_id="a",
            description=f"leaders with def < sigma up to {self.scan_limit}",
            expected=LEADERS_D1, actual=self.d1, status=_status(self.d1 == LEADERS_D1),
        )

    def check_leaders_d2(self) -> CheckResult:
        return CheckResult(
            check_id="b",
            description=f"leaders with def in [sigma, 2 sigma) up to {self.scan_limit}",
            expected=LEADERS_D2, actual=self.d2, status=_status(self.d2 == LEADERS_D2),
        )

    def check_u_b2(self) -> CheckResult:
        counts = [self.census.U_B(2, m) for m in range(1, self.m_top + 1)]
        worst = max(counts)
        return CheckResult(
            check_id="c", description="U_B(2, m) <= 4 for every m",
            expected=4, actual=worst, status=_status(worst <= 4),
            witnesses=[{"m": m + 1, "U_B": c} for m, c in enumerate(counts) if c == worst],
        )

    def t_sigma(self, literal: bool = False) -> List[int]:
        """T_sigma: 1 and the multiplicatively irreducible n below the threshold
        with no efficient split n = (n-b) + b, 1 < b <= n/2 (only additively
        irreducible b when literal)."""
        threshold = self.t_threshold()
        members = [1]
        for n in range(2, threshold + 1):
            if not is_mult_irreducible(self.table, n):
                continue
            cost = self.table.query(n)
            splits = [
                b for b in range(2, n // 2 + 1)
                if self.table.query(n - b) + self.table.query(b) == cost
                and (not literal or is_add_irreducible(self.table, b))
            ]
            if not splits:
                members.append(n)
        return members

    def t_threshold(self) -> int:
        return math.floor(1 / (3 ** ((1 - self.sigma) / 3) - 1) + 1)

    def check_t_sigma(self) -> CheckResult:
        threshold = self.t_threshold()
        members = self.t_sigma()
        return CheckResult(
            check_id="d",
            description="T_sigma (efficient-split reading) and its size threshold",
            expected={"T": [1, 2, 3], "threshold": 5},
            actual={"T": members, "threshold": threshold, "literal_T": self.t_sigma(literal=True)},
            status=_status(members == [1, 2, 3] and threshold == 5),
        )

    def check_z(self) -> CheckResult:
        z = [b for b in range(1, 28) if is_add_irreducible(self.table, b)]
        return CheckResult(
            check_id="e", description="additively irreducible b <= 27",
            expected=SET_Z, actual=z, status=_status(z == SET_Z),
        )

    def check_a(self) -> CheckResult:
        cost2 = self.table.query(2)
        literal = [
            x for x in self.small
            if x % 2 or self.table.query(x) != cost2 + self.table.query(x // 2)
        ]
        if literal != SET_A:
            logger.warning(f"Set A by the literal predicate is {literal}, published {SET_A}")
        return CheckResult(
            check_id="f",
            description="leaders of class 1-2 with ||x|| != ||2|| + ||x/2|| (literal predicate)",
            expected=SET_A, actual=literal, status=REPORT_ONLY,
            witnesses=sorted(set(literal) ^ set(SET_A)),
        )

    def check_v(self) -> CheckResult:
        v = sorted({1} | (set(self.d1) - {3}))
        powers = [2 ** s for s in range(5)]
        return CheckResult(
            check_id="g", description="V = {1} + (B cap D_1) - {3} = {2^s : s <= 4}",
            expected=SET_V, actual=v, status=_status(v == SET_V == powers),
        )

    def check_window(self) -> CheckResult:
        best, (left, right, inside) = window_maximum(self.small)
        return CheckResult(
            check_id="h", description="most class 1-2 leaders in a window (x, 4x]",
            expected=7, actual=best, status=_status(best == 7),
            witnesses=[{"window": [left, right], "members": inside}],
        )

    def q_values(self, classes=range(1, 11)) -> Dict[int, int]:
        """Q_p: per class, the most distinct products uv of class 1-2 leaders
        falling in one interval (3^(l-1), 3^l]."""
        products = sorted({u * v for u in self.small for v in self.small})
        cells: Dict[tuple, int] = {}
        for value in products:
            key = (self.arrays.class_of(value), interval_index(value))
            cells[key] = cells.get(key, 0) + 1
        return {p: max([count for (k, _), count in cells.items() if k == p], default=0) for p in classes}

    def check_q(self) -> CheckResult:
        q = self.q_values()
        ok = q[3] == 8 and q[4] == 9 and all(q[p] == 0 for p in range(6, 11))
        if q[5] != Q_PUBLISHED[5]:
            logger.warning(f"Q_5 = {q[5]} differs from the published {Q_PUBLISHED[5]}")
        return CheckResult(
            check_id="i",
            description="Q_3 = 8, Q_4 = 9 and Q_p = 0 for 6 <= p <= 10 (Q_5 reported)",
            expected={f"Q{p}": v for p, v in Q_PUBLISHED.items()},
            actual={f"Q{p}": q[p] for p in Q_PUBLISHED},
            status=_status(ok),
        )

    def check_u_n3(self) -> CheckResult:
        ms = range(4, 11)
        counts = [self.census.U_N(3, m) for m in ms]
        return CheckResult(
            check_id="j", description="U_N(3, m), all n of class 3 in (3^(m-1), 3^m], for m = 4..10",
            expected=U_N3, actual=counts, status=_status(counts == U_N3),
            witnesses=[{"m": m, "U_B": self.census.U_B(3, m)} for m in ms],
        )

    def check_four(self) -> CheckResult:
        lhs, rhs = self.table.query(4), 2 * self.table.query(2)
        return CheckResult(
            check_id="k", description="||4|| = ||2|| + ||2||",
            expected=rhs, actual=lhs, status=_status(lhs == rhs),
        )

    def check_u_tilde(self) -> CheckResult:
        sums = [self.census.U_B(1, m) + self.census.U_B(2, m) for m in range(1, self.m_top + 1)]
        return CheckResult(
            check_id="l", description="max over l of U_B(1, l) + U_B(2, l)",
            expected=5, actual=max(sums), status=_status(max(sums) == 5),
        )

    def check_case_one(self) -> CheckResult:
        products = [(u, v, u * v, self.arrays.class_of(u * v)) for u in (2, 3) for v in self.d1]
        bad = [p for p in products if p[3] > 2]
        return CheckResult(
            check_id="m", description="uv with u in T_sigma - {1}, v in B cap D_1 lies in D_1 or D_2",
            expected=0, actual=len(bad), status=_status(not bad),
            witnesses=[{"u": u, "v": v, "class": k} for u, v, _, k in bad],
        )

    def check_first_window(self) -> CheckResult:
        z = [b for b in range(1, 28) if is_add_irreducible(self.table, b)]
        divisible = len([b for b in z if b % 3 == 0])
        window, _ = window_maximum(self.small)
        bound = len(SET_V) * (divisible * window + (len(z) - divisible) * len(self.small))
        return CheckResult(
            check_id="n", description="|Z cap 3Z| and the first-window bound |V|(8*7 + 6*17)",
            expected={"Z3": 8, "bound": 790}, actual={"Z3": divisible, "bound": bound},
            status=_status(divisible == 8 and bound == 790),
        )

    def check_base_case(self) -> CheckResult:
        q3 = self.q_values(range(3, 4))[3]
        window, _ = window_maximum(self.small)
        bound = q3 + len(SET_V) * (2 * len(self.small) + 2 * len(SET_A) + window)
        ratios = [self.census.U_N(3, m) / m for m in range(4, 11)]
        ok = bound == 273 and all(r < 273 / 11 for r in ratios)
        return CheckResult(
            check_id="o", description="base-case bound 273 and U_N(3, m)/m < 273/11 for m = 4..10",
            expected=273, actual=bound, status=_status(ok),
            witnesses=[{"m": m, "ratio": r} for m, r in zip(range(4, 11), ratios)],
        )

    def check_small_defect_shape(self) -> CheckResult:
        small = self.arrays.members(1, leaders_only=False)
        bad = []
        for n in small:
            t, s, rest = smooth_part(n)
            if rest != 1 or t > 4 or s + t < 1:
                bad.append(n)
        return CheckResult(
            check_id="p", description="def(n) < sigma implies n = 2^t 3^s with t <= 4",
            expected=0, actual=len(bad), status=_status(not bad), witnesses=bad[:20],
        )

    def check_chain(self) -> CheckResult:
        arrays = self.arrays
        index = np.flatnonzero(~arrays.leader)
        parent = (index + 1) // 3 - 1
        drift = np.abs(arrays.defect[index] - arrays.defect[parent])
        broken = (index[(drift > 1e-9) | (arrays.classes[index] != arrays.classes[parent])] + 1).tolist()
        cumulative = np.cumsum(self.census.leaders, axis=1)
        cells = np.argwhere(self.census.everything > cumulative)
        ok = not broken and cells.size == 0
        return CheckResult(
            check_id="q",
            description="def(n) = def(n/3) off the leaders, and U_N(k, m) <= sum_{r<=m} U_B(k, r)",
            expected=0, actual=len(broken) + len(cells), status=_status(ok),
            witnesses=broken[:20] + [{"k": int(k) + 1, "m": int(m) + 1} for k, m in cells],
        )

    def run(self, threads: int = 1) -> List[CheckResult]:
        checks = self.checks()
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            futures = {check_id: pool.submit(check) for check_id, check in checks.items()}
            results = [futures[check_id].result() for check_id in sorted(futures)]
        for result in results:
            logger.info(f"Check ({result.check_id}) {result.status}: {result.description}")
        return results

    def report(self, threads: int = 1, timestamp: bool = False) -> VerificationReport:
        """Run every check; defects settled near a class boundary are listed alongside."""
        return VerificationReport(
            suite="paper", sigma=self.sigma, scan_limit=self.scan_limit, checks=self.run(threads),
            settled=[entry.records() for entry in self.arrays.settled],
            generated_at=_timestamp(timestamp),
        )


def _timestamp(timestamp: bool) -> Optional[str]:
    return datetime.now(timezone.utc).isoformat() if timestamp else None


@logging
def verify_paper_sets(table: ComplexityTable, sigma: float = SIGMA,
                      scan_limit: int = DEFAULT_SCAN_LIMIT, threads: int = 1,
                      timestamp: bool = False) -> VerificationReport:
    """
    Re-derive the finite sets and counts of the lower-bound argument.

    Args:
        table: Complexity table with limit >= scan_limit
        sigma: Class step
        scan_limit: Upper end of every enumeration
        threads: Checks run in parallel on this many threads
        timestamp: Stamp the report with the current time

    Returns:
        Report with one entry per check, ordered by id

    Raises:
        TableTooSmallError: If the table does not reach scan_limit
        BoundaryAmbiguityError: If a defect stays within SETTLE_RESOLUTION of a class
            boundary at DEFECT_DPS digits
    """
    return PaperSetVerifier(table, sigma, scan_limit).report(threads, timestamp)


def integral_bound(k: float) -> float:
    """F(k) = k^(5/2) * int_2^(k-1) x^(-5/2) (k-x+1)^(-5/2) dx in closed form."""
    t = (k - 1) / 2
    antiderivative = 4 / 3 * (t ** 1.5 - t ** -1.5) + 12 * (t ** 0.5 - t ** -0.5)
    return k ** 2.5 * (k + 1) ** -4 * antiderivative


def integral_bound_quad(k: float) -> float:
    value, _ = integrate.quad(lambda x: x ** -2.5 * (k - x + 1) ** -2.5, 2, k - 1)
    return k ** 2.5 * value


def six_term_sum(params: ClassificationParams) -> List[float]:
    C, c, lam = params.C, params.c, params.lam
    e = math.exp(params.eta)
    return [
        127 * e / ((2 - 3 * c) * C),
        88 * e * lam / C,
        425 / ((2 - 3 * c) * C),
        8199 * e * c / ((1 - c) * C ** 2),
        11124 * c ** 2 * e / ((1 - 420 * c ** 3) * (2 - 3 * c) * C),
        5682 / (lam * C ** 2),
    ]


@logging
def verify_constant_system(params: ClassificationParams = ClassificationParams(),
                           census_matrix: Optional[CensusMatrix] = None,
                           timestamp: bool = False) -> VerificationReport:
    """
    Evaluate the scalar inequalities on sigma, lambda, c, C, eta and gamma.

    Args:
        params: Constants of the classification argument
        census_matrix: When given, the class bound is also checked on every
            nonempty census cell
        timestamp: Stamp the report with the current time
    """
    sigma = params.sigma
    def2 = 2 - 3 * math.log(2, 3)
    terms = six_term_sum(params)
    gamma_value = params.gamma / sigma * math.log(params.C * sigma / params.gamma, 3)
    grid = np.arange(4, 401)
    closed = np.array([integral_bound(float(k)) for k in grid])
    quad = {k: integral_bound_quad(k) for k in (4, 11, 12)}
    quad_ok = all(abs(quad[k] - integral_bound(k)) <= 1e-8 * quad[k] for k in quad)

    checks = [
        CheckResult(
            check_id="i", description="sigma < 4.5 def(2)",
            expected=f"> {sigma}", actual=4.5 * def2, status=_status(sigma < 4.5 * def2),
        ),
        CheckResult(
            check_id="ii", description="lambda >= 2.5 and c < 420^(-1/3)",
            expected={"lambda": 2.5, "c": 420 ** (-1 / 3)},
            actual={"lambda": params.lam, "c": params.c},
            status=_status(params.lam >= 2.5 and params.c < 420 ** (-1 / 3)),
        ),
        CheckResult(
            check_id="iii", description="six-term sum of the lower bounds for c_1..c_6 < 1",
            expected="< 1", actual=sum(terms), status=_status(sum(terms) < 1), witnesses=terms,
        ),
        CheckResult(
            check_id="iv", description="(gamma/sigma) log_3(C sigma/gamma) < 1",
            expected="< 1", actual=gamma_value, status=_status(gamma_value < 1),
        ),
        CheckResult(
            check_id="v", description="c < 0.064 and c^3 <= 1/420",
            expected={"c": 0.064, "c^3": 1 / 420}, actual={"c": params.c, "c^3": params.c ** 3},
            status=_status(params.c < 0.064 and params.c ** 3 <= 1 / 420),
        ),
        CheckResult(
            check_id="vi", description="tau = 1.76/sigma",
            expected=1.76 / sigma, actual=params.tau,
            status=_status(math.isclose(params.tau, 1.76 / sigma, rel_tol=1e-12)),
        ),
        CheckResult(
            check_id="vii", description="F(k) < 0.71 on 4 <= k <= 400, closed form against quadrature",
            expected="< 0.71", actual=float(closed.max()),
            status=_status(bool(closed.max() < 0.71) and quad_ok),
            witnesses=[{"k": int(grid[closed.argmax()])}] + [{"k": k, "quad": v} for k, v in quad.items()],
        ),
    ]
    if census_matrix is not None:
        slope = 3 * (math.log2(3) - 1)
        occupied = np.argwhere(census_matrix.everything > 0)
        bad = [(int(k) + 1, int(m) + 1) for k, m in occupied if k * sigma > slope * (m + 1)]
        checks.append(CheckResult(
            check_id="viii", description="(k-1) sigma <= 3m(log_2 3 - 1) on every nonempty census cell",
            expected=0, actual=len(bad), status=_status(not bad),
            witnesses=[{"k": k, "m": m} for k, m in bad],
        ))
    return VerificationReport(
        suite="constants", sigma=sigma, checks=checks, generated_at=_timestamp(timestamp),
    )
