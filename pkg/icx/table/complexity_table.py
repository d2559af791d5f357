import time
from typing import Optional

import numpy as np
from loguru import logger

from icx.config import ABSOLUTE_LIMIT, MAX_TABLE_BYTES, PRUNE_EPSILON
from icx.errors import LimitTooLargeError, TableRangeError, TableTooSmallError
from icx.table.kernels import NUMBA_AVAILABLE, fill_costs, smallest_prime_factors
from icx.util import logging

# uint8 table + int32 sieve
BYTES_PER_ENTRY = 5
SIEVE_LIMIT = 2 ** 31


class ComplexityTable:
    """
    Immutable byte-per-entry map n -> ||n|| for 1 <= n <= limit.
    """

    __slots__ = ("_costs",)

    def __init__(self, costs: np.ndarray, copy: bool = True):
        """
        Wrap a cost array.

        Args:
            costs: uint8 array, entry n-1 holds ||n||
            copy: Copy the array instead of taking ownership of it
        """
        array = np.ascontiguousarray(costs, dtype=np.uint8)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("costs must be a non-empty one-dimensional array")
        if copy and array is costs:
            array = array.copy()
        array.setflags(write=False)
        self._costs = array

    @property
    def limit(self) -> int:
        return int(self._costs.size)

    @property
    def costs(self) -> np.ndarray:
        return self._costs

    @property
    def nbytes(self) -> int:
        return int(self._costs.nbytes)

    def costs_array(self, upto: Optional[int] = None) -> np.ndarray:
        """Read-only view of ||1||..||upto||."""
        if upto is None:
            return self._costs
        self.require(upto)
        return self._costs[:upto]

    def require(self, n: int, what: str = "operation") -> None:
        if n > self.limit:
            raise TableTooSmallError(n, self.limit, what)

    def query(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise TableRangeError(n, self.limit)
        return int(self._costs[n - 1])

    def __getitem__(self, n: int) -> int:
        return self.query(n)

    def __len__(self) -> int:
        return self.limit

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexityTable):
            return NotImplemented
        return self.limit == other.limit and bool(np.array_equal(self._costs, other._costs))

    def __hash__(self):
        return hash((self.limit, self._costs[: min(64, self.limit)].tobytes()))

    def __repr__(self) -> str:
        return f"ComplexityTable(limit={self.limit})"


def estimate_build_bytes(limit: int) -> int:
    """Working memory of a build: the table plus the sieve."""
    return BYTES_PER_ENTRY * (limit + 1)


def _check_limit(limit: int, max_bytes: int) -> None:
    if limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    if limit >= ABSOLUTE_LIMIT:
        raise LimitTooLargeError(
            f"limit {limit} >= 2**85: costs could exceed one byte per entry"
        )
    if limit >= SIEVE_LIMIT:
        raise LimitTooLargeError(f"limit {limit} exceeds the int32 sieve range ({SIEVE_LIMIT - 1})")
    needed = estimate_build_bytes(limit)
    if needed > max_bytes:
        raise LimitTooLargeError(
            f"limit {limit} needs about {needed / 2 ** 20:.1f} MiB, "
            f"above the configured budget of {max_bytes / 2 ** 20:.1f} MiB (ICX_MAX_TABLE_BYTES)"
        )


@logging
def build_table(limit: int, prune_additive: bool = True,
                max_bytes: int = MAX_TABLE_BYTES) -> ComplexityTable:
    """
    Build the exact complexity table up to limit.

    Args:
        limit: Largest n covered
        prune_additive: Stop the additive scan once the 3*log3 lower bound
            rules out any improvement
        max_bytes: Memory budget for the build

    Returns:
        The completed table

    Raises:
        LimitTooLargeError: If limit >= 2**85 or the build would exceed max_bytes
    """
    _check_limit(limit, max_bytes)
    if not NUMBA_AVAILABLE:
        logger.warning("numba is not installed; building the table with the pure-Python kernel")
    started = time.perf_counter()
    spf = smallest_prime_factors(limit)
    costs = np.zeros(limit, dtype=np.uint8)
    fill_costs(costs, spf, prune_additive, PRUNE_EPSILON)
    del spf
    table = ComplexityTable(costs, copy=False)
    logger.info(
        f"Built complexity table up to {limit} ({table.nbytes} bytes) "
        f"in {time.perf_counter() - started:.2f}s"
    )
    return table


def query(table: ComplexityTable, n: int) -> int:
    """
    Look up ||n||.

    Raises:
        TableRangeError: If n is outside [1, table.limit]
    """
    return table.query(n)
