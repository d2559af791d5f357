"""
Defects def(n) = ||n|| - 3 log_3 n, leaders, defect classes and their counts.

Class k under step sigma holds the n with def(n) in [(k-1)*sigma, k*sigma).
Single records are computed with mpmath; whole tables in numpy extended
precision. Powers of 3 are pinned to defect 0 and def(1) = 1.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import mpmath
import numpy as np
from loguru import logger

from icx.config import BOUNDARY_GUARD, DEFECT_DPS, SETTLE_RESOLUTION, SIGMA
from icx.errors import BoundaryAmbiguityError
from icx.table.complexity_table import ComplexityTable
from icx.util import logging


def is_power_of_three(n: int) -> bool:
    if n < 1:
        return False
    while n % 3 == 0:
        n //= 3
    return n == 1


def powers_of_three(limit: int) -> List[int]:
    """3^0, 3^1, ... up to limit."""
    out = [1]
    while out[-1] * 3 <= limit:
        out.append(out[-1] * 3)
    return out


def interval_index(n: int) -> int:
    """m with 3^(m-1) < n <= 3^m (0 for n = 1)."""
    m, power = 0, 1
    while power < n:
        power *= 3
        m += 1
    return m


@dataclass(frozen=True)
class ClassificationParams:
    sigma: float = SIGMA
    tau: float = 11 / 3
    C: float = 780.0
    lam: float = (273 * 81 / 11) / 780
    c: float = 13.5 * (11 / 3) / 780
    eta: float = 1 / 6
    gamma: float = 0.06

    def records(self) -> Dict:
        return {
            "sigma": self.sigma, "tau": self.tau, "C": self.C, "lambda": self.lam,
            "c": self.c, "eta": self.eta, "gamma": self.gamma,
        }


@dataclass
class DefectRecord:
    n: int
    cost: int
    defect: float
    leader: bool
    class_index: int
    settled: bool = False

    def records(self) -> Dict:
        return {
            "n": self.n, "cost": self.cost, "defect": self.defect,
            "leader": self.leader, "class": self.class_index, "settled": self.settled,
        }


@dataclass(frozen=True)
class SettledDefect:
    """A defect within the guard of a class boundary, binned at DEFECT_DPS digits."""
    n: int
    defect: str
    distance: float
    class_index: int

    def records(self) -> Dict:
        return {"n": self.n, "defect": self.defect, "distance": self.distance, "class": self.class_index}


def is_leader(table: ComplexityTable, n: int) -> bool:
    """3 does not divide n, or ||n|| < ||n/3|| + 3."""
    if n % 3:
        return True
    return table.query(n) < table.query(n // 3) + 3


def settle_defect(n: int, cost: int, sigma: float = SIGMA,
                  resolution: float = SETTLE_RESOLUTION) -> SettledDefect:
    """
    Bin def(n) at DEFECT_DPS digits.

    Raises:
        BoundaryAmbiguityError: If even that leaves def(n) within resolution
            of a multiple of sigma and n is not a power of 3
    """
    with mpmath.workdps(DEFECT_DPS):
        if n == 1:
            defect = mpmath.mpf(1)
        elif is_power_of_three(n):
            defect = mpmath.mpf(0)
        else:
            defect = cost - 3 * mpmath.log(n) / mpmath.log(3)
        step = mpmath.mpf(sigma)
        ratio = defect / step
        distance = abs(ratio - mpmath.nint(ratio)) * step
        if n > 1 and defect != 0 and distance < resolution:
            raise BoundaryAmbiguityError([n], sigma, resolution)
        return SettledDefect(n, mpmath.nstr(defect, 25), float(distance), int(mpmath.floor(ratio)) + 1)


def defect_record(table: ComplexityTable, n: int, sigma: float = SIGMA,
                  guard: float = BOUNDARY_GUARD,
                  resolution: float = SETTLE_RESOLUTION) -> DefectRecord:
    """
    Defect, leader flag and class of a single n.

    The record is flagged as settled when def(n) lies within guard of a class
    boundary.

    Raises:
        TableRangeError: If n is outside the table
        BoundaryAmbiguityError: If def(n) lies within resolution of a class
            boundary and n is not a power of 3
    """
    cost = table.query(n)
    entry = settle_defect(n, cost, sigma, resolution)
    settled = n > 1 and not is_power_of_three(n) and entry.distance < guard
    if settled:
        logger.warning(f"def({n}) = {entry.defect} is {entry.distance:.2e} from a class boundary")
    defect = float(mpmath.mpf(entry.defect))
    return DefectRecord(n, cost, defect, is_leader(table, n), entry.class_index, settled)


def power_of_three_mask(upto: int) -> np.ndarray:
    mask = np.zeros(upto, dtype=bool)
    mask[np.array(powers_of_three(upto)) - 1] = True
    return mask


def defect_values(table: ComplexityTable, upto: Optional[int] = None) -> np.ndarray:
    """def(1), ..., def(upto) as np.longdouble."""
    upto = table.limit if upto is None else upto
    costs = table.costs_array(upto).astype(np.longdouble)
    n = np.arange(1, upto + 1, dtype=np.longdouble)
    defect = costs - 3 * np.log(n) / np.log(np.longdouble(3))
    defect[power_of_three_mask(upto)] = 0
    defect[0] = 1
    return defect


class DefectArrays:
    """
    Defects, classes and leader flags for every n <= upto, indexed by n-1.

    Defects are computed in extended precision; the few within guard of a
    class boundary are re-binned by settle_defect and listed in settled.
    """

    def __init__(self, table: ComplexityTable, upto: Optional[int] = None,
                 sigma: float = SIGMA, guard: float = BOUNDARY_GUARD,
                 resolution: float = SETTLE_RESOLUTION):
        upto = table.limit if upto is None else upto
        costs = table.costs_array(upto).astype(np.int64)
        n = np.arange(1, upto + 1)
        defect = defect_values(table, upto)
        pow3 = power_of_three_mask(upto)
        ratio = defect / np.longdouble(sigma)
        classes = np.floor(ratio).astype(np.int64) + 1
        near = np.abs(ratio - np.rint(ratio)) * np.longdouble(sigma) < guard
        near &= ~pow3
        settled = [settle_defect(int(i) + 1, int(costs[i]), sigma, resolution) for i in np.flatnonzero(near)]
        for entry in settled:
            classes[entry.n - 1] = entry.class_index
        if settled:
            logger.warning(
                f"{len(settled)} defects within {guard:g} of a class boundary settled at "
                f"{DEFECT_DPS} digits: n = {', '.join(str(s.n) for s in settled[:10])}"
            )

        leader = n % 3 != 0
        divisible = np.flatnonzero(~leader)
        leader[divisible] = costs[divisible] < costs[(divisible + 1) // 3 - 1] + 3

        self.upto = upto
        self.sigma = sigma
        self.costs = costs
        self.defect = defect
        self.classes = classes
        self.leader = leader
        self.power_of_three = pow3
        self.settled: List[SettledDefect] = settled

    def members(self, class_index: int, leaders_only: bool = True, start: int = 2) -> List[int]:
        mask = self.classes == class_index
        if leaders_only:
            mask &= self.leader
        mask[: start - 1] = False
        return (np.flatnonzero(mask) + 1).tolist()

    def class_of(self, n: int) -> int:
        return int(self.classes[n - 1])


@dataclass
class CensusMatrix:
    sigma: float
    leaders: np.ndarray
    everything: np.ndarray
    settled: List[SettledDefect] = field(default_factory=list)

    @property
    def k_max(self) -> int:
        return self.leaders.shape[0]

    @property
    def m_max(self) -> int:
        return self.leaders.shape[1]

    def U_B(self, k: int, m: int) -> int:
        return int(self.leaders[k - 1, m - 1])

    def U_N(self, k: int, m: int) -> int:
        return int(self.everything[k - 1, m - 1])

    def U_B_total(self, k: int) -> int:
        """U_B(k) as the sum over m of U_B(k, m)."""
        return int(self.leaders[k - 1].sum())

    def records(self) -> List[Dict]:
        return [
            {"k": k + 1, "m": m + 1, "U_B": int(self.leaders[k, m]), "U_N": int(self.everything[k, m])}
            for k in range(self.k_max)
            for m in range(self.m_max)
        ]


@logging
def census(table: ComplexityTable, sigma: float = SIGMA, k_max: int = 6, m_max: int = 8,
           arrays: Optional[DefectArrays] = None) -> CensusMatrix:
    """
    U_B(k, m) and U_N(k, m) for k <= k_max, m <= m_max by full enumeration.

    Raises:
        TableTooSmallError: If 3^m_max exceeds the table
    """
    if k_max < 1 or m_max < 1:
        raise ValueError("k_max and m_max must be positive")
    top = 3 ** m_max
    table.require(top, f"census up to m={m_max}")
    if arrays is None or arrays.upto < top or arrays.sigma != sigma:
        arrays = DefectArrays(table, top, sigma)
    powers = np.array(powers_of_three(top), dtype=np.int64)
    n = np.arange(2, top + 1)
    m_index = np.searchsorted(powers, n, side="left")
    k_index = arrays.classes[1:top]
    keep = k_index <= k_max
    cell = (k_index[keep] - 1) * m_max + (m_index[keep] - 1)
    size = k_max * m_max
    everything = np.bincount(cell, minlength=size).reshape(k_max, m_max)
    lead = arrays.leader[1:top][keep]
    leaders = np.bincount(cell[lead], minlength=size).reshape(k_max, m_max)
    logger.info(f"Census up to 3^{m_max}: {int(leaders.sum())} leaders in classes <= {k_max}")
    settled = [entry for entry in arrays.settled if entry.n <= top]
    return CensusMatrix(sigma, leaders, everything, settled)


def is_add_irreducible(table: ComplexityTable, n: int) -> bool:
    """||a|| + ||n-a|| > ||n|| for every 1 <= a <= n/2."""
    cost = table.query(n)
    if n < 2:
        return True
    costs = table.costs_array(n).astype(np.int64)
    a = np.arange(1, n // 2 + 1)
    return bool((costs[a - 1] + costs[n - a - 1] > cost).all())


def is_mult_irreducible(table: ComplexityTable, n: int) -> bool:
    """||d|| + ||n/d|| > ||n|| for every divisor 1 < d <= sqrt(n)."""
    cost = table.query(n)
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0 and table.query(d) + table.query(n // d) <= cost:
            return False
    return True


def discard_thresholds(lam: float, C: float, ks=range(3, 10)) -> List[int]:
    """
    For each k, the least m with lam * (C*m)^(k-2) / k^(k+1) <= 3^m.
    """
    if lam <= 0 or C <= 0:
        raise ValueError("lambda and C must be positive")
    log3 = math.log(3)
    out = []
    for k in ks:
        m = 1
        while math.log(lam) + (k - 2) * math.log(C * m) - (k + 1) * math.log(k) > m * log3:
            m += 1
        out.append(m)
    return out
