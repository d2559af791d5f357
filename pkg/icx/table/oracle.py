"""
Reference implementation of the complexity recurrence, used only to
cross-validate the pruned table build.
"""

from typing import List

ORACLE_MAX = 10 ** 5


def trial_divisors(n: int) -> List[int]:
    """Divisors d of n with 1 < d <= sqrt(n), by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
        d += 1
    return out


def brute_costs(limit: int) -> List[int]:
    """
    Memoized full recursion without pruning: every additive split
    a + (n - a), 1 <= a <= n/2, and every factorization d * (n/d).

    Args:
        limit: Largest n to evaluate

    Returns:
        List whose entry n-1 is ||n||
    """
    if not 1 <= limit <= ORACLE_MAX:
        raise ValueError(f"oracle range is [1, {ORACLE_MAX}], got {limit}")
    memo = [0] * (limit + 1)
    memo[1] = 1
    for n in range(2, limit + 1):
        best = min(memo[a] + memo[n - a] for a in range(1, n // 2 + 1))
        for d in trial_divisors(n):
            best = min(best, memo[d] + memo[n // d])
        memo[n] = best
    return memo[1:]


def brute_oracle(n: int) -> int:
    """||n|| by the unpruned recurrence (n <= 10**5)."""
    return brute_costs(n)[n - 1]
