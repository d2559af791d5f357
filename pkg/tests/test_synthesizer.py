# tests/test_synthesizer.py
import math
import random
import unittest

import numpy as np
from scipy.special import lambertw

from icx.errors import SchemaError, TableTooSmallError
from icx.models.digit_bounds import certify_base
from icx.models.expression import ExpressionBuilder, binary_cost, parse
from icx.models.synthesizer import base_digits, lambert_w, paper_params, synthesize
from shared_tables import HUGE, NEEDS_NUMBA, NUMBA_AVAILABLE, SCAN, SMALL, table


class TestLambertW(unittest.TestCase):
    def test_against_scipy(self):
        for x in np.logspace(-6, 12, 200):
            expected = lambertw(x).real
            self.assertAlmostEqual(lambert_w(float(x)), expected, delta=1e-12 * max(1.0, expected))

    def test_residual(self):
        for x in (1e-9, 0.5, 1.0, math.e, 10.0, 1e6):
            w = lambert_w(x)
            self.assertLessEqual(abs(w * math.exp(w) - x), 1e-12 * max(1.0, x))

    def test_special_values(self):
        self.assertEqual(lambert_w(0), 0.0)
        self.assertAlmostEqual(lambert_w(math.e), 1.0, places=14)
        self.assertAlmostEqual(lambert_w(1.0), 0.5671432904097838, places=14)
        with self.assertRaises(ValueError):
            lambert_w(-0.1)


class TestConstructionParams(unittest.TestCase):
    def test_values(self):
        params = paper_params(10 ** 12)
        self.assertEqual((params.p, params.K), (8, 0))
        self.assertEqual(params.k_effective, 1)
        self.assertEqual(paper_params(3).p, 11)
        self.assertEqual(paper_params(10 ** 12).records()["n"], "1000000000000")

    def test_rejects_small_n(self):
        with self.assertRaises(ValueError):
            paper_params(2)


class TestSynthesize(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.table = table(SMALL)
        cls.bounds = certify_base(24, cls.table)
        cls.builder = ExpressionBuilder(cls.table)

    def run_synth(self, n, k_range=(1, 64)):
        return synthesize(n, 24, k_range, self.bounds, self.table, self.builder)

    def test_power_of_three(self):
        result = self.run_synth(3 ** 40, (1, 2))
        self.assertEqual(result.k, 1)
        self.assertEqual(result.r, 0)
        self.assertEqual(result.digits, base_digits(3 ** 40, 24))
        self.assertEqual(result.expression.value, 3 ** 40)
        self.assertEqual(result.expression.ones, result.predicted_cost)
        self.assertGreaterEqual(result.predicted_cost, 120)

    def test_random_targets(self):
        rng = random.Random(2024)
        ratios = []
        for _ in range(1000):
            n = rng.randint(10 ** 9, 10 ** 12)
            result = self.run_synth(n)
            self.assertEqual(result.expression.value, n)
            self.assertEqual(result.expression.ones, result.predicted_cost)
            ratios.append(result.ratio)
        self.assertLessEqual(sum(ratios) / len(ratios), 3.6)
        self.assertLessEqual(max(ratios), 4.2)

    def test_beats_binary_on_average(self):
        rng = random.Random(7)
        targets = [rng.randint(10 ** 10, 10 ** 12) for _ in range(300)]
        synthesized = [self.run_synth(n).predicted_cost for n in targets]
        binary = [binary_cost(n) for n in targets]
        self.assertLess(sum(synthesized) / len(targets), sum(binary) / len(targets))

    def test_never_below_true_complexity(self):
        t = table(SCAN)
        bounds = certify_base(24, t)
        builder = ExpressionBuilder(t)
        rng = random.Random(11)
        for n in rng.sample(range(2, SCAN + 1), 300):
            result = synthesize(n, 24, (1, 64), bounds, t, builder)
            self.assertEqual(result.expression.value, n)
            self.assertGreaterEqual(result.predicted_cost, t.query(n))

    @unittest.skipUnless(NUMBA_AVAILABLE, NEEDS_NUMBA)
    def test_never_below_true_complexity_to_ten_million(self):
        t = table(HUGE)
        bounds = certify_base(24, t)
        builder = ExpressionBuilder(t)
        rng = random.Random(13)
        for n in rng.sample(range(SCAN, HUGE + 1), 300):
            result = synthesize(n, 24, (1, 64), bounds, t, builder)
            self.assertEqual(result.expression.value, n)
            self.assertGreaterEqual(result.predicted_cost, t.query(n))

    def test_wider_range_never_costs_more(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(10 ** 8, 10 ** 12)
            self.assertLessEqual(self.run_synth(n, (1, 64)).predicted_cost,
                                 self.run_synth(n, (1, 16)).predicted_cost)

    def test_records_round_trip_through_parse(self):
        record = self.run_synth(10 ** 9).records()
        self.assertEqual(record["n"], str(10 ** 9))
        self.assertEqual(parse(record["expression"]).value, 10 ** 9)
        self.assertAlmostEqual(record["ratio_cost_over_log_n"], record["cost"] / math.log(10 ** 9))

    def test_very_large_target(self):
        n = 10 ** 1000 + 7
        result = self.run_synth(n)
        self.assertEqual(result.expression.value, n)
        self.assertGreater(result.expression.depth, 1000)
        record = result.records()
        parsed = parse(record["expression"])
        self.assertEqual(parsed.value, n)
        self.assertEqual(parsed.ones, record["cost"])
        self.assertEqual(parsed, result.expression)

    def test_errors(self):
        with self.assertRaises(SchemaError):
            self.run_synth(1)
        with self.assertRaises(SchemaError):
            self.run_synth(10 ** 9, (5, 5))
        with self.assertRaises(SchemaError):
            synthesize(10 ** 9, 12, (1, 64), self.bounds, self.table)
        with self.assertRaises(TableTooSmallError):
            self.run_synth(10 ** 9, (1, SMALL + 2))


if __name__ == "__main__":
    unittest.main()
