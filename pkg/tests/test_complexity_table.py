# tests/test_complexity_table.py
import math
import unittest

import numpy as np

from icx.errors import LimitTooLargeError, TableRangeError, TableTooSmallError
from icx.table import ComplexityTable, brute_costs, brute_oracle, build_table, estimate_build_bytes, query
from icx.table.kernels import smallest_prime_factors
from shared_tables import HUGE, NEEDS_NUMBA, NUMBA_AVAILABLE, SCAN, SMALL, table


class TestBuildTable(unittest.TestCase):
    def test_matches_unpruned_recursion(self):
        expected = brute_costs(SMALL)
        built = table(SMALL).costs.tolist()
        self.assertEqual(built, expected)

    def test_pruning_does_not_change_entries(self):
        pruned = table(SMALL)
        full = build_table(SMALL, prune_additive=False)
        self.assertEqual(pruned, full)

    def test_known_values(self):
        t = table(SMALL)
        self.assertEqual(query(t, 1), 1)
        self.assertEqual(query(t, 6), 5)
        self.assertEqual(query(t, 11), 8)
        self.assertEqual(query(t, 12), 7)
        self.assertEqual(query(t, 1439), 26)
        self.assertEqual(brute_oracle(1439), 26)

    def test_powers_of_three(self):
        t = table(SCAN)
        for k in range(1, 13):
            self.assertEqual(t.query(3 ** k), 3 * k)

    def test_sandwich_bounds(self):
        t = table(SCAN)
        n = np.arange(2, t.limit + 1)
        costs = t.costs[1:].astype(np.float64)
        self.assertTrue(np.all(3 * np.log(n) / np.log(3) <= costs + 1e-9))
        self.assertTrue(np.all(costs <= 3 * np.log2(n) + 1e-9))

    @unittest.skipUnless(NUMBA_AVAILABLE, NEEDS_NUMBA)
    def test_sandwich_bounds_to_ten_million(self):
        t = table(HUGE)
        n = np.arange(2, t.limit + 1)
        costs = t.costs[1:].astype(np.float64)
        self.assertTrue(np.all(3 * np.log(n) / np.log(3) <= costs + 1e-9))
        self.assertTrue(np.all(costs <= 3 * np.log2(n) + 1e-9))

    def test_sieve(self):
        spf = smallest_prime_factors(30)
        self.assertEqual(spf[2], 2)
        self.assertEqual(spf[15], 3)
        self.assertEqual(spf[29], 29)
        self.assertEqual(spf[25], 5)


class TestComplexityTable(unittest.TestCase):
    def test_range_errors(self):
        t = table(SMALL)
        with self.assertRaises(TableRangeError):
            t.query(0)
        with self.assertRaises(TableRangeError):
            t.query(SMALL + 1)
        with self.assertRaises(IndexError):
            t[SMALL + 1]
        with self.assertRaises(TableTooSmallError):
            t.require(SMALL + 1)

    def test_costs_are_read_only(self):
        t = table(SMALL)
        self.assertFalse(t.costs.flags.writeable)
        with self.assertRaises(ValueError):
            t.costs[0] = 9

    def test_wraps_a_copy(self):
        costs = np.array([1, 2, 3], dtype=np.uint8)
        t = ComplexityTable(costs)
        costs[0] = 7
        self.assertEqual(t[1], 1)
        self.assertEqual(len(t), 3)

    def test_limit_checks(self):
        with self.assertRaises(ValueError):
            build_table(0)
        with self.assertRaises(LimitTooLargeError):
            build_table(2 ** 85)
        with self.assertRaises(LimitTooLargeError):
            build_table(10 ** 6, max_bytes=1024)

    def test_build_estimate(self):
        self.assertEqual(estimate_build_bytes(999), 5000)
        self.assertLess(math.log2(estimate_build_bytes(10 ** 7)), 26)


if __name__ == "__main__":
    unittest.main()
