"""
Empirical probes: discrepancy of the S_j point sets, extreme values of
||n|| / log n, densities of small complexity and defect counts, and the
2^a 3^b 5^c scan.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from icx.config import BOUNDARY_GUARD
from icx.models.defects import defect_values, power_of_three_mask
from icx.table.complexity_table import ComplexityTable
from icx.util import logging

Number = Union[Fraction, float, int]


@dataclass
class PointSet:
    points: List[Fraction]
    n: int
    m: int
    j: int
    K: int

    def as_floats(self) -> List[float]:
        return [float(p) for p in self.points]

    def records(self) -> List[Dict]:
        return [
            {"k": self.K + i, "point": f"{p.numerator}/{p.denominator}", "value": float(p)}
            for i, p in enumerate(self.points)
        ]


def s_j_points(n: int, m: int, j: int, K: int) -> PointSet:
    """
    Points ((n - r_k)/k mod m^j) / m^j for k = K, ..., 2K-1, in exact arithmetic.
    """
    if K < 1 or m < 2 or j < 0:
        raise ValueError(f"need K >= 1, m >= 2, j >= 0; got K={K}, m={m}, j={j}")
    modulus = m ** j
    points = []
    for k in range(K, 2 * K):
        quotient = (n - n % k) // k
        points.append(Fraction(quotient % modulus, modulus))
    return PointSet(points, n, m, j, K)


def _sorted_fractions(points: Sequence[Number]) -> List[Fraction]:
    if len(points) == 0:
        raise ValueError("discrepancy of an empty point set")
    values = sorted(Fraction(p) for p in points)
    if values[0] < 0 or values[-1] >= 1:
        raise ValueError("points must lie in [0, 1)")
    return values


def star_discrepancy(points: Sequence[Number]) -> Fraction:
    """D* = max_i max(i/K - x_(i), x_(i) - (i-1)/K) over the sorted points."""
    values = _sorted_fractions(points)
    K = len(values)
    return max(max(Fraction(i, K) - x, x - Fraction(i - 1, K)) for i, x in enumerate(values, 1))


def extreme_discrepancy(points: Sequence[Number]) -> Fraction:
    """
    Supremum over subintervals of |#points inside / K - length|.

    Excess is attained on closed intervals between two point values,
    deficiency on open gaps between consecutive breakpoints (0 and 1 included).
    Both maxima use running extremes over the sorted distinct values.
    """
    values = _sorted_fractions(points)
    K = len(values)

    distinct = sorted(set(values))
    at_most: Dict[Fraction, int] = {}
    count = 0
    for v in values:
        count += 1
        at_most[v] = count

    excess = Fraction(0)
    best_left = None
    previous = 0
    for v in distinct:
        left = v - Fraction(previous, K)
        best_left = left if best_left is None else max(best_left, left)
        previous = at_most[v]
        excess = max(excess, Fraction(previous, K) - v + best_left)

    breaks = sorted(set(distinct) | {Fraction(0), Fraction(1)})
    below = [at_most.get(t, 0) for t in breaks]
    for i in range(1, len(below)):
        below[i] = max(below[i], below[i - 1])
    deficiency = Fraction(0)
    best_start = Fraction(below[0], K) - breaks[0]
    for b in range(1, len(breaks)):
        deficiency = max(deficiency, breaks[b] - Fraction(below[b - 1], K) + best_start)
        best_start = max(best_start, Fraction(below[b], K) - breaks[b])
    return max(excess, deficiency)


@dataclass
class RatioScan:
    n: int
    cost: int
    ratio: float

    def records(self) -> Dict:
        return {"n": self.n, "cost": self.cost, "ratio": self.ratio}


def _ratios(table: ComplexityTable, N: int) -> np.ndarray:
    if N < 2:
        raise ValueError(f"ratio scan needs N >= 2, got {N}")
    costs = table.costs_array(N)
    n = np.arange(2, N + 1)
    return costs[1:] / np.log(n)


@logging
def ratio_scan(table: ComplexityTable, N: int) -> RatioScan:
    """
    argmax of ||n|| / log n over 2 <= n <= N (smallest n on ties).

    Raises:
        TableTooSmallError: If N exceeds the table
    """
    table.require(N, "ratio scan")
    ratios = _ratios(table, N)
    index = int(np.argmax(ratios))
    n = index + 2
    return RatioScan(n, table.query(n), float(ratios[index]))


def ratio_records(table: ComplexityTable, N: int) -> List[Dict]:
    """Rows (n, cost, ratio) at every new running maximum of ||n|| / log n."""
    table.require(N, "ratio scan")
    ratios = _ratios(table, N)
    running = np.maximum.accumulate(ratios)
    new = np.flatnonzero(np.concatenate(([True], running[1:] > running[:-1])))
    return [
        {"n": int(i) + 2, "cost": table.query(int(i) + 2), "ratio": float(ratios[i])}
        for i in new
    ]


@dataclass
class DensityScan:
    threshold: float
    grid: List[int]
    counts: List[int]
    ambiguous: List[int] = field(default_factory=list)

    @property
    def fractions(self) -> List[float]:
        return [c / N for c, N in zip(self.counts, self.grid)]

    def records(self) -> List[Dict]:
        return [
            {"N": N, "count": c, "fraction": f}
            for N, c, f in zip(self.grid, self.counts, self.fractions)
        ]


@logging
def density_scan(table: ComplexityTable, t: float, grid: Sequence[int],
                 guard: float = BOUNDARY_GUARD) -> DensityScan:
    """
    |{n <= N : ||n|| <= t log_3 n}| for every N in the grid.

    Powers of 3 are decided exactly (3k <= t k); other n whose margin is within
    guard are still decided in extended precision and listed as ambiguous.
    """
    grid = sorted(int(N) for N in grid)
    if not grid or grid[0] < 1:
        raise ValueError("density grid must hold positive integers")
    top = grid[-1]
    table.require(top, "density scan")
    costs = table.costs_array(top).astype(np.longdouble)
    n = np.arange(1, top + 1, dtype=np.longdouble)
    margin = t * np.log(n) / np.log(np.longdouble(3)) - costs
    pow3 = power_of_three_mask(top)
    inside = margin >= 0
    inside[pow3] = 3 <= t
    inside[0] = False
    near = (np.abs(margin) < guard) & ~pow3
    near[0] = False
    ambiguous = (np.flatnonzero(near) + 1).tolist()
    if ambiguous:
        logger.warning(f"{len(ambiguous)} values within {guard:g} of the threshold {t}")
    cumulative = np.cumsum(inside)
    counts = [int(cumulative[N - 1]) for N in grid]
    return DensityScan(t, grid, counts, ambiguous)


@dataclass
class GrowthReport:
    r: float
    grid: List[int]
    counts: List[int]
    exponent: float

    def records(self) -> List[Dict]:
        return [{"N": N, "r": self.r, "count": c} for N, c in zip(self.grid, self.counts)]


@logging
def defect_growth(table: ComplexityTable, r: float, grid: Sequence[int]) -> GrowthReport:
    """
    |{n <= N : def(n) < r}| per grid point, with the slope of log(count)
    against log(log N) as the fitted exponent (nan with fewer than two
    usable points).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    grid = sorted(int(N) for N in grid)
    if not grid or grid[0] < 1:
        raise ValueError("growth grid must hold positive integers")
    table.require(grid[-1], "defect growth")
    cumulative = np.cumsum(defect_values(table, grid[-1]) < r)
    counts = [int(cumulative[N - 1]) for N in grid]
    usable = [(N, c) for N, c in zip(grid, counts) if N >= 3 and c > 0]
    exponent = math.nan
    if len(usable) >= 2:
        x = np.log(np.log([N for N, _ in usable]))
        y = np.log([c for _, c in usable])
        exponent = float(np.polyfit(x, y, 1)[0])
    return GrowthReport(r, grid, counts, exponent)


@dataclass
class ConjectureReport:
    limit: int
    checked: int
    violations: List[Tuple[int, int, int, int, int]]

    @property
    def passed(self) -> bool:
        return not self.violations

    def records(self) -> List[Dict]:
        return [
            {"n": n, "a": a, "b": b, "c": c, "cost": cost, "expected": 2 * a + 3 * b + 5 * c}
            for n, a, b, c, cost in self.violations
        ]


@logging
def conjecture_scan(table: ComplexityTable, N: int, max_c: int = 5) -> ConjectureReport:
    """
    Check ||2^a 3^b 5^c|| = 2a + 3b + 5c for every such value <= N with
    a + b + c > 0 and c <= max_c.
    """
    table.require(N, "conjecture scan")
    checked = 0
    violations = []
    five = 1
    for c in range(max_c + 1):
        if five > N:
            break
        three = five
        for b in range(N.bit_length()):
            if three > N:
                break
            value = three
            for a in range(N.bit_length()):
                if value > N:
                    break
                if a + b + c > 0:
                    checked += 1
                    cost = table.query(value)
                    if cost != 2 * a + 3 * b + 5 * c:
                        violations.append((value, a, b, c, cost))
                value *= 2
            three *= 3
        five *= 5
    if violations:
        logger.warning(f"{len(violations)} values of the form 2^a 3^b 5^c break the formula")
    return ConjectureReport(N, checked, violations)
