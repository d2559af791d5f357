"""
Certified upper bounds for the digit costs D(m, r) = sup_n (||m*n + r|| - ||n||).

bound(m, r) is the cheaper of the trivial schema (multiply by m, add r) and
every composition through an ordered factorization m = b1 * b2:

    m*n + r = b1 * (b2*n + r // b1) + r % b1

so bound(m, r) <= bound(b2, r // b1) + bound(b1, r % b1). The DP runs over
the divisors of m in increasing order, vectorized over remainders.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from icx.errors import SchemaError
from icx.models.expression import Expression, ExpressionBuilder
from icx.table.complexity_table import ComplexityTable
from icx.util import logging

C_AVG_NUMERATOR = 2326006662
C_AVG_BASE = 2 ** 11 * 3 ** 9


@dataclass(frozen=True)
class Schema:
    """
    Witness for bound(base, r). split == 0 is the trivial schema; otherwise
    outer certifies (split, r % split) and inner (base // split, r // split).
    """
    base: int
    r: int
    split: int = 0
    outer: Optional["Schema"] = None
    inner: Optional["Schema"] = None

    @property
    def trivial(self) -> bool:
        return self.split == 0

    def steps(self) -> List[Tuple[int, int]]:
        """Flattened trivial steps (base_i, digit_i), outermost first."""
        if self.trivial:
            return [(self.base, self.r)]
        return self.outer.steps() + self.inner.steps()

    def serialize(self) -> str:
        return "|".join(f"{b},{d}" for b, d in self.steps())


@dataclass
class DigitBoundTable:
    base: int
    bounds: np.ndarray
    witnesses: List[Schema]

    @property
    def total(self) -> int:
        return int(self.bounds.sum())

    @property
    def max_bound(self) -> int:
        return int(self.bounds.max())

    @property
    def averaged_constant(self) -> float:
        return self.total / (self.base * math.log(self.base))

    def bound(self, r: int) -> int:
        return int(self.bounds[r])

    def records(self) -> List[Dict]:
        return [
            {"base": self.base, "r": r, "bound": int(self.bounds[r]),
             "witness": self.witnesses[r].serialize()}
            for r in range(self.base)
        ]


def divisors(m: int) -> List[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def memory_estimate(m: int) -> int:
    """Bytes held by the per-divisor bound and split arrays while certifying base m."""
    return 12 * sum(divisors(m))


class _DivisorDP:
    def __init__(self, m: int, table: ComplexityTable):
        self.m = m
        self.table = table
        self.bounds: Dict[int, np.ndarray] = {}
        self.splits: Dict[int, np.ndarray] = {}
        self._schemas: Dict[Tuple[int, int], Schema] = {}

    def run(self) -> None:
        costs = self.table.costs_array(self.m).astype(np.int64)
        divs = divisors(self.m)
        for d in divs:
            if d == 1:
                continue
            r = np.arange(d)
            remainder_cost = np.where(r > 0, costs[np.maximum(r, 1) - 1], 0)
            best = costs[d - 1] + remainder_cost
            split = np.zeros(d, dtype=np.int64)
            for b1 in divs:
                if b1 <= 1 or b1 >= d or d % b1:
                    continue
                b2 = d // b1
                candidate = self.bounds[b1][r % b1] + self.bounds[b2][r // b1]
                better = candidate < best
                best = np.where(better, candidate, best)
                split = np.where(better, b1, split)
            self.bounds[d] = best
            self.splits[d] = split

    def schema(self, base: int, r: int) -> Schema:
        key = (base, r)
        cached = self._schemas.get(key)
        if cached is not None:
            return cached
        b1 = int(self.splits[base][r])
        if b1 == 0:
            result = Schema(base, r)
        else:
            result = Schema(
                base, r, b1,
                outer=self.schema(b1, r % b1),
                inner=self.schema(base // b1, r // b1),
            )
        self._schemas[key] = result
        return result


@logging
def certify_base(m: int, table: ComplexityTable) -> DigitBoundTable:
    """
    Certify bound(m, r) for every remainder 0 <= r < m.

    Args:
        m: Base, at least 2
        table: Complexity table with limit >= m

    Returns:
        Bounds, witness schemas and the averaged constant

    Raises:
        SchemaError: If m < 2
        TableTooSmallError: If the table does not cover m
    """
    if m < 2:
        raise SchemaError(f"base must be at least 2, got {m}")
    table.require(m, f"certifying base {m}")
    dp = _DivisorDP(m, table)
    dp.run()
    witnesses = [dp.schema(m, r) for r in range(m)]
    result = DigitBoundTable(m, dp.bounds[m], witnesses)
    logger.info(f"Certified base {m}: sum {result.total}, constant {result.averaged_constant:.4f}")
    return result


def averaged_constant(m: int, table: ComplexityTable) -> float:
    """(1 / (m log m)) * sum_r bound(m, r)."""
    return certify_base(m, table).averaged_constant


def reference_constant() -> float:
    """The averaged constant for base 2^11 3^9 with the published digit sum."""
    return C_AVG_NUMERATOR / (C_AVG_BASE * math.log(C_AVG_BASE))


def apply_schema(schema: Schema, expr: Expression, builder: ExpressionBuilder) -> Expression:
    """
    Turn an expression for n into one for base*n + r.

    The result has exactly bound(base, r) more ones than expr.
    """
    for base, digit in reversed(schema.steps()):
        expr = expr * builder.build(base)
        if digit > 0:
            expr = expr + builder.build(digit)
    return expr


def empirical_lower(m: int, r: int, scan: int, table: ComplexityTable) -> int:
    """
    max over 1 <= n <= scan of ||m*n + r|| - ||n||, a lower estimate of D(m, r).

    Raises:
        TableTooSmallError: If m*scan + r exceeds the table
    """
    if m < 2 or not 0 <= r < m:
        raise SchemaError(f"need m >= 2 and 0 <= r < m, got m={m}, r={r}")
    if scan < 1:
        raise ValueError("scan must be positive")
    table.require(m * scan + r, f"scanning D({m},{r})")
    costs = table.costs.astype(np.int64)
    n = np.arange(1, scan + 1)
    return int((costs[m * n + r - 1] - costs[n - 1]).max())
