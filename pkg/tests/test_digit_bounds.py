# tests/test_digit_bounds.py
import random
import unittest

from icx.errors import SchemaError, TableTooSmallError
from icx.models.digit_bounds import (
    apply_schema,
    averaged_constant,
    certify_base,
    divisors,
    empirical_lower,
    memory_estimate,
    reference_constant,
)
from icx.models.expression import ExpressionBuilder
from icx.table import build_table
from shared_tables import DESK, SCAN, SMALL, table


class TestCertifyBase(unittest.TestCase):
    def test_small_bases(self):
        self.assertEqual(certify_base(2, table(SMALL)).bounds.tolist(), [2, 3])
        self.assertEqual(certify_base(6, table(SMALL)).bounds.tolist(), [5, 6, 6, 6, 7, 8])

    def test_sums(self):
        expected = {2: 5, 6: 38, 12: 104, 24: 265}
        for m, total in expected.items():
            with self.subTest(m=m):
                self.assertEqual(certify_base(m, table(SMALL)).total, total)

    def test_averaged_constants(self):
        self.assertAlmostEqual(averaged_constant(2, table(SMALL)), 3.6067, delta=1e-4)
        self.assertAlmostEqual(averaged_constant(24, table(SMALL)), 3.4743, delta=1e-3)
        self.assertAlmostEqual(reference_constant(), 3.2950, delta=1e-3)

    def test_never_worse_than_trivial(self):
        t = table(SMALL)
        for m in range(2, 61):
            bounds = certify_base(m, t)
            for r in range(m):
                trivial = t.query(m) + (t.query(r) if r else 0)
                self.assertLessEqual(bounds.bound(r), trivial)

    def test_composition_inequality(self):
        t = table(SMALL)
        whole = certify_base(24, t)
        for b1 in (2, 3, 4, 6, 8, 12):
            outer, inner = certify_base(b1, t), certify_base(24 // b1, t)
            for r in range(24):
                self.assertLessEqual(whole.bound(r), outer.bound(r % b1) + inner.bound(r // b1))

    def test_witness_form(self):
        bounds = certify_base(12, table(SMALL))
        self.assertEqual(bounds.bound(5), 9)
        self.assertEqual(bounds.witnesses[5].serialize(), "2,1|2,0|3,1")
        self.assertTrue(bounds.witnesses[0].trivial)
        rows = bounds.records()
        self.assertEqual(len(rows), 12)
        self.assertEqual(rows[5], {"base": 12, "r": 5, "bound": 9, "witness": "2,1|2,0|3,1"})

    def test_errors(self):
        with self.assertRaises(SchemaError):
            certify_base(1, table(SMALL))
        with self.assertRaises(TableTooSmallError):
            certify_base(24, build_table(10))

    def test_memory_estimate(self):
        self.assertEqual(divisors(12), [1, 2, 3, 4, 6, 12])
        self.assertEqual(memory_estimate(12), 12 * 28)


class TestSchemaSoundness(unittest.TestCase):
    def test_schemas_build_exact_expressions(self):
        t = table(SCAN)
        builder = ExpressionBuilder(t)
        for m in range(2, 25):
            bounds = certify_base(m, t)
            rng = random.Random(m)
            for r in range(m):
                for n in rng.sample(range(1, DESK + 1), 20):
                    expr = apply_schema(bounds.witnesses[r], builder.build(n), builder)
                    self.assertEqual(expr.value, m * n + r)
                    self.assertEqual(expr.ones, t.query(n) + bounds.bound(r))
                    self.assertLessEqual(t.query(m * n + r), t.query(n) + bounds.bound(r))


class TestEmpiricalLower(unittest.TestCase):
    def test_known_values(self):
        t = table(SCAN)
        self.assertEqual(empirical_lower(2, 0, DESK, t), 2)
        self.assertEqual(empirical_lower(2, 1, DESK, t), 3)
        self.assertEqual(empirical_lower(3, 0, DESK, t), 3)

    def test_dominated_by_certified_bounds(self):
        t = table(SCAN)
        for m in range(2, 25):
            bounds = certify_base(m, t)
            for r in range(m):
                self.assertLessEqual(empirical_lower(m, r, DESK, t), bounds.bound(r))

    def test_errors(self):
        with self.assertRaises(SchemaError):
            empirical_lower(6, 6, 10, table(SMALL))
        with self.assertRaises(ValueError):
            empirical_lower(6, 1, 0, table(SMALL))
        with self.assertRaises(TableTooSmallError):
            empirical_lower(6, 1, SMALL, table(SMALL))


if __name__ == "__main__":
    unittest.main()
