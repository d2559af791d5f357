"""
Explicit expressions for large n through a split n = k * n_k + r_k and a
base-m Horner expansion of n_k whose lower digits use certified schemas.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from loguru import logger

from icx.errors import SchemaError
from icx.models.digit_bounds import DigitBoundTable, apply_schema
from icx.models.expression import Expression, ExpressionBuilder, render
from icx.table.complexity_table import ComplexityTable
from icx.util import logging

_HALLEY_ITERATIONS = 100


def lambert_w(x: float) -> float:
    """
    Principal branch of the Lambert W function for x >= 0.

    Starts from log(1+x) damped by log(1+log(1+x)) and converges with
    Halley's method.

    Args:
        x: Nonnegative real

    Returns:
        w with w * exp(w) = x

    Raises:
        ValueError: If x is negative
    """
    if x < 0 or math.isnan(x):
        raise ValueError(f"lambert_w needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return math.inf
    w = math.log1p(x)
    w -= math.log1p(w) if x > 3 else 0.0
    for _ in range(_HALLEY_ITERATIONS):
        ew = math.exp(w)
        f = w * ew - x
        w1 = w + 1
        dw = f / (ew * w1 - (w + 2) * f / (2 * w1))
        w -= dw
        if abs(dw) < 0.7e-16 * (2 + abs(w)):
            break
    return w


@dataclass(frozen=True)
class ParamChoice:
    n: int
    p: int
    K: int

    @property
    def k_effective(self) -> int:
        """K clamped to 1, the smallest usable multiplier."""
        return max(1, self.K)

    def records(self) -> Dict:
        return {"n": str(self.n), "p": self.p, "K": self.K, "k_effective": self.k_effective}


def paper_params(n: int) -> ParamChoice:
    """
    p = floor(log n / log log n) (at least 1) and
    K = floor((log n)^(2/3) * W(3 * 2^-18 * log n)^(1/3)).
    """
    if n < 3:
        raise ValueError(f"paper_params needs n >= 3, got {n}")
    log_n = math.log(n)
    p = max(1, math.floor(log_n / math.log(log_n)))
    K = math.floor(log_n ** (2 / 3) * lambert_w(3 * 2.0 ** -18 * log_n) ** (1 / 3))
    return ParamChoice(n, p, max(0, K))


def base_digits(value: int, m: int) -> List[int]:
    """Digits of value in base m, most significant first."""
    digits = []
    while value:
        value, digit = divmod(value, m)
        digits.append(digit)
    digits.reverse()
    return digits


@dataclass
class SynthesisResult:
    n: int
    base: int
    k: int
    r: int
    digits: List[int]
    predicted_cost: int
    expression: Expression

    @property
    def ratio(self) -> float:
        return self.predicted_cost / math.log(self.n)

    def records(self) -> Dict:
        return {
            "n": str(self.n),
            "base": self.base,
            "k": self.k,
            "r": self.r,
            "digits": self.digits,
            "cost": self.predicted_cost,
            "ratio_cost_over_log_n": self.ratio,
            "expression": render(self.expression),
        }


def candidate_cost(n: int, k: int, bounds: DigitBoundTable,
                   table: ComplexityTable) -> Optional[Tuple[int, int, List[int]]]:
    """(cost, r_k, digits of n_k) for one multiplier, or None when n_k = 0."""
    r, nk = n % k, n // k
    if nk == 0:
        return None
    digits = base_digits(nk, bounds.base)
    cost = table.query(digits[0]) + sum(int(bounds.bounds[d]) for d in digits[1:])
    if k > 1:
        cost += table.query(k)
    if r > 0:
        cost += table.query(r)
    return cost, r, digits


@logging
def synthesize(n: int, m: int, k_range: Tuple[int, int], bounds: DigitBoundTable,
               table: ComplexityTable, builder: Optional[ExpressionBuilder] = None) -> SynthesisResult:
    """
    Cheapest split over k in [k_lo, k_hi) and its assembled expression.

    Args:
        n: Target, n >= 2
        m: Expansion base, must equal bounds.base
        k_range: Half-open multiplier range
        bounds: Certified digit bounds for base m
        table: Complexity table covering k_hi - 1 and m
        builder: Optional shared expression cache

    Returns:
        The argmin candidate (smallest k on ties)

    Raises:
        SchemaError: Empty k range, base mismatch or n < 2
        TableTooSmallError: If the table does not cover the k range
    """
    k_lo, k_hi = k_range
    if n < 2:
        raise SchemaError(f"synthesis needs n >= 2, got {n}")
    k_lo = max(1, k_lo)
    if k_hi <= k_lo:
        raise SchemaError(f"empty k range [{k_range[0]}, {k_range[1]})")
    if bounds.base != m:
        raise SchemaError(f"digit bounds are for base {bounds.base}, not {m}")
    table.require(max(k_hi - 1, m), f"synthesis with k < {k_hi} in base {m}")

    best = None
    for k in range(k_lo, k_hi):
        candidate = candidate_cost(n, k, bounds, table)
        if candidate is not None and (best is None or candidate[0] < best[1][0]):
            best = (k, candidate)
    if best is None:
        raise SchemaError(f"no k in [{k_lo}, {k_hi}) leaves a positive quotient of {n}")

    k, (cost, r, digits) = best
    builder = builder or ExpressionBuilder(table)
    expr = builder.build(digits[0])
    for digit in digits[1:]:
        expr = apply_schema(bounds.witnesses[digit], expr, builder)
    if k > 1:
        expr = expr * builder.build(k)
    if r > 0:
        expr = expr + builder.build(r)
    logger.debug(f"Synthesized n with {len(digits)} base-{m} digits, k={k}, cost {cost}")
    return SynthesisResult(n, m, k, r, digits, cost, expr)
