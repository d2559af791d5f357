# tests/test_cli.py
import io
import json
import unittest
from contextlib import redirect_stderr, redirect_stdout

from icx.main import run
from icx.models.analysis import density_scan
from icx.table import load_table
from icx.util.csv_io import load_records
from shared_tables import DESK, SCAN, scratch_path, table, table_file


def invoke(*argv):
    """Run the CLI and return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run([str(arg) for arg in argv])
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, _ = invoke(*argv, "--format", "json")
    return code, json.loads(out)


class TestQueryAndExpr(unittest.TestCase):
    def setUp(self):
        self.table = str(table_file(DESK))

    def test_query_text(self):
        self.assertEqual(invoke("--table", self.table, "query", 1439, "--format", "text")[:2], (0, "26\n"))

    def test_query_json(self):
        code, payload = invoke_json("--table", self.table, "query", 1439)
        self.assertEqual(code, 0)
        self.assertEqual(payload, {"n": 1439, "cost": 26})
        code, payload = invoke_json("--table", self.table, "query", 6, 12)
        self.assertEqual(payload["count"], 2)
        self.assertEqual([row["cost"] for row in payload["results"]], [5, 7])

    def test_numeric_forms(self):
        code, out, _ = invoke("--table", self.table, "query", "1_439", "1e3", "3^8", "--format", "text")
        self.assertEqual(code, 0)
        self.assertEqual(out.split(), [str(table(DESK).query(n)) for n in (1439, 1000, 3 ** 8)])

    def test_out_of_range(self):
        code, out, err = invoke("--table", self.table, "query", DESK + 1)
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("outside the table range", err)

    def test_expr(self):
        code, out, _ = invoke("--table", self.table, "expr", 6, "--format", "text")
        self.assertEqual((code, out), (0, "((1+1)*(1+1+1))\n"))
        code, payload = invoke_json("--table", self.table, "expr", 1439)
        self.assertEqual(payload["ones"], 26)

    def test_expr_parse(self):
        code, payload = invoke_json("expr", "--parse", "((1+1)*(1+1+1))")
        self.assertEqual((code, payload["value"], payload["ones"]), (0, 6, 5))
        code, _, err = invoke("expr", "--parse", "(1+)")
        self.assertEqual(code, 2)
        self.assertIn("offset 3", err)

    def test_defect(self):
        code, payload = invoke_json("--table", self.table, "defect", 19)
        self.assertEqual((code, payload["class"], payload["cost"]), (0, 2, 9))


class TestTables(unittest.TestCase):
    def test_build(self):
        path = scratch_path("cli/built.icx")
        code, payload = invoke_json("build", "--table", path, "--limit", 1000)
        self.assertEqual(code, 0)
        self.assertEqual(payload["limit"], 1000)
        self.assertEqual(load_table(path), table(1000))

    def test_in_memory_table_uses_limit(self):
        code, out, _ = invoke("--limit", 500, "query", 500, "--format", "text")
        self.assertEqual(code, 0)
        self.assertEqual(out, f"{table(500).query(500)}\n")

    def test_corrupt_table_file(self):
        path = scratch_path("cli/corrupt.icx")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(b"XXXX" + table_file(DESK).read_bytes()[4:])
        code, _, err = invoke("--table", path, "query", 5)
        self.assertEqual(code, 2)
        self.assertIn("magic", err)


class TestDigitCommands(unittest.TestCase):
    def test_drb_text(self):
        code, out, _ = invoke("drb", "--base", 24, "--format", "text")
        self.assertEqual((code, out), (0, "sum 265\nconstant 3.4743\n"))

    def test_drb_csv(self):
        code, out, _ = invoke("drb", "--base", 6, "--format", "csv")
        rows = load_records(io.StringIO(out))
        self.assertEqual(code, 0)
        self.assertEqual(list(rows[0]), ["base", "r", "bound", "witness"])
        self.assertEqual([int(row["bound"]) for row in rows], [5, 6, 6, 6, 7, 8])

    def test_drb_empirical(self):
        code, payload = invoke_json("drb", "--base", 2, "--scan", 1000)
        self.assertEqual([row["empirical"] for row in payload["bounds"]], [2, 3])

    def test_huge_base_needs_flag(self):
        code, _, err = invoke("drb", "--base", 200_000)
        self.assertEqual(code, 2)
        self.assertIn("--huge", err)
        self.assertIn("MiB", err)

    def test_synth(self):
        code, payload = invoke_json("synth", "1e9", "--base", 24)
        self.assertEqual(code, 0)
        self.assertEqual(payload["n"], str(10 ** 9))
        code, parsed = invoke_json("expr", "--parse", payload["expression"])
        self.assertEqual(parsed["value"], 10 ** 9)
        self.assertEqual(parsed["ones"], payload["cost"])

    def test_params(self):
        code, payload = invoke_json("params", "10^12")
        self.assertEqual((code, payload["p"], payload["K"]), (0, 8, 0))


class TestVerify(unittest.TestCase):
    def test_constants(self):
        code, payload = invoke_json("verify", "--suite", "constants")
        self.assertEqual(code, 0)
        self.assertTrue(payload["passed"])
        self.assertEqual(len(payload["checks"]), 7)

    def test_failing_constants_exit_one(self):
        code, payload = invoke_json("verify", "--suite", "constants", "--sigma", "0.49")
        self.assertEqual(code, 1)
        self.assertIn("i", payload["failures"])

    def test_set_suite_needs_a_large_table(self):
        code, _, err = invoke("--table", table_file(DESK), "verify")
        self.assertEqual(code, 2)
        self.assertIn("scan_limit", err)

    def test_all_suites(self):
        code, payload = invoke_json("--table", table_file(SCAN), "verify", "--suite", "all", "--threads", 2)
        self.assertEqual(code, 0)
        self.assertEqual(payload["verified_up_to"], SCAN)
        ids = [row["check_id"] for row in payload["checks"]]
        self.assertIn("paper:a", ids)
        self.assertIn("constants:viii", ids)
        self.assertEqual(len(payload["settled"]), 7)
        self.assertIn(571825, [entry["n"] for entry in payload["settled"]])

    def test_census(self):
        code, payload = invoke_json("--table", table_file(DESK), "census", "--kmax", 3, "--mmax", 4)
        self.assertEqual(code, 0)
        cells = {(cell["k"], cell["m"]): (cell["U_B"], cell["U_N"]) for cell in payload["cells"]}
        self.assertEqual(cells[(3, 4)], (14, 18))
        self.assertEqual(cells[(1, 1)], (2, 2))
        self.assertEqual(payload["settled"], [])


class TestStats(unittest.TestCase):
    def setUp(self):
        self.table = str(table_file(DESK))

    def test_ratio(self):
        code, payload = invoke_json("--table", self.table, "stats", "ratio", "--n", 10)
        self.assertEqual((code, payload["n"]), (0, 5))
        code, payload = invoke_json("--table", self.table, "stats", "ratio", "--records")
        self.assertEqual(payload["n"], 1439)
        self.assertEqual(payload["rows"][-1]["n"], 1439)

    def test_density(self):
        code, payload = invoke_json("--table", self.table, "stats", "density", "--grid", "100,1000", "--t", 2)
        self.assertEqual(code, 0)
        self.assertEqual([row["count"] for row in payload["rows"]], [0, 0])

    def test_threshold_flag(self):
        for t in (3.0, 3.3):
            code, payload = invoke_json("--table", self.table, "stats", "density", "--grid", "1000,10000", "--t", t)
            self.assertEqual(code, 0)
            self.assertEqual([row["count"] for row in payload["rows"]],
                             density_scan(table(DESK), t, [1000, DESK]).counts)
        self.assertEqual(invoke("--table", self.table, "stats", "density", "--thr", 3)[0], 2)

    def test_default_grid(self):
        code, payload = invoke_json("--table", self.table, "stats", "growth")
        self.assertEqual([row["N"] for row in payload["rows"]], [10, 100, 1000, DESK])

    def test_discrepancy(self):
        code, payload = invoke_json("stats", "discrepancy", "--n", 100, "--m", 2, "--j", 1, "--K", 3)
        self.assertEqual(code, 0)
        self.assertEqual(payload["star"], "1/2")
        self.assertEqual(len(payload["points"]), 3)
        code, _, _ = invoke("stats", "discrepancy")
        self.assertEqual(code, 2)

    def test_conjecture(self):
        code, payload = invoke_json("--table", self.table, "stats", "conjecture")
        self.assertEqual(code, 0)
        self.assertTrue(payload["passed"])
        self.assertEqual(payload["violations"], [])


class TestExitCodes(unittest.TestCase):
    def test_usage_errors(self):
        self.assertEqual(invoke("frobnicate")[0], 2)
        self.assertEqual(invoke("--limit", "abc", "query", 5)[0], 2)
        self.assertEqual(invoke("query")[0], 2)
        self.assertEqual(invoke("--limit", 0, "query", 1)[0], 2)
        self.assertEqual(invoke("--help")[0], 0)

    def test_output_is_deterministic(self):
        first = invoke("--table", table_file(DESK), "census", "--kmax", 2, "--mmax", 3, "--format", "csv")
        second = invoke("--table", table_file(DESK), "census", "--kmax", 2, "--mmax", 3, "--format", "csv")
        self.assertEqual(first[:2], second[:2])

    def test_timestamp(self):
        code, payload = invoke_json("--timestamp", "params", 1000)
        self.assertIn("generated_at", payload)
        code, payload = invoke_json("params", 1000)
        self.assertNotIn("generated_at", payload)


if __name__ == "__main__":
    unittest.main()
