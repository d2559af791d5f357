"""
Numeric kernels for the complexity table.

Written as plain loops over numpy arrays so numba can compile them; without
numba the same functions run as ordinary Python.
"""

import math
import numpy as np

try:
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func
        return decorator

# Enough room for the prime signature and divisor list of any n < 2**63
MAX_PRIME_FACTORS = 64
MAX_DIVISORS = 1 << 16


@njit(cache=True, nogil=True)
def smallest_prime_factors(limit):
    """spf[n] is the smallest prime dividing n (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    i = 2
    while i <= limit:
        if spf[i] == 0:
            j = i
            while j <= limit:
                if spf[j] == 0:
                    spf[j] = i
                j += i
        i += 1
    return spf


@njit(cache=True, nogil=True)
def _divisors_into(n, spf, primes, exponents, divisors):
    # factor n with the sieve, then expand the divisor list in place
    nprimes = 0
    rest = n
    while rest > 1:
        p = spf[rest]
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        primes[nprimes] = p
        exponents[nprimes] = e
        nprimes += 1
    count = 1
    divisors[0] = 1
    for i in range(nprimes):
        base_count = count
        power = 1
        for _ in range(exponents[i]):
            power *= primes[i]
            for j in range(base_count):
                divisors[count] = divisors[j] * power
                count += 1
    return count


@njit(cache=True, nogil=True)
def fill_costs(costs, spf, prune, epsilon):
    """
    Fill costs[n-1] = ||n|| for 1 <= n <= len(costs).

    Entry n reads only entries below n. With prune set, the additive scan
    over a = 1..n/2 stops once 3*log3(a*(n-a)) >= best + epsilon.
    """
    limit = costs.shape[0]
    primes = np.zeros(MAX_PRIME_FACTORS, dtype=np.int64)
    exponents = np.zeros(MAX_PRIME_FACTORS, dtype=np.int64)
    divisors = np.zeros(MAX_DIVISORS, dtype=np.int64)
    three_over_log3 = 3.0 / math.log(3.0)
    costs[0] = 1
    for n in range(2, limit + 1):
        best = np.int64(costs[n - 2]) + 1
        if spf[n] != n:
            count = _divisors_into(n, spf, primes, exponents, divisors)
            for i in range(count):
                d = divisors[i]
                if d > 1 and d * d <= n:
                    c = np.int64(costs[d - 1]) + np.int64(costs[n // d - 1])
                    if c < best:
                        best = c
        half = n // 2
        for a in range(2, half + 1):
            if prune:
                if three_over_log3 * math.log(float(a) * float(n - a)) >= best + epsilon:
                    break
            c = np.int64(costs[a - 1]) + np.int64(costs[n - a - 1])
            if c < best:
                best = c
        costs[n - 1] = best
    return costs

