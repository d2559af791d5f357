"""
One handler per subcommand. Handlers return an Output and never print,
except for the huge-base memory estimate which goes to standard error
before the work starts.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from loguru import logger

from icx.config import DATA_DIR, HUGE_BASE_THRESHOLD
from icx.errors import TableTooSmallError, UsageError
from icx.models.analysis import (
    conjecture_scan,
    defect_growth,
    density_scan,
    extreme_discrepancy,
    ratio_records,
    ratio_scan,
    s_j_points,
    star_discrepancy,
)
from icx.models.defects import ClassificationParams, census, defect_record
from icx.models.digit_bounds import certify_base, empirical_lower, memory_estimate
from icx.models.expression import parse, reconstruct, render
from icx.models.synthesizer import paper_params, synthesize
from icx.models.verifier import DEFAULT_SCAN_LIMIT, PaperSetVerifier, VerificationReport, verify_constant_system
from icx.table import ComplexityTable, build_table, estimate_build_bytes, load_table, save_table
from icx.ui.parser import Config
from icx.ui.report import Output


class TableSource:
    """
    Supplies the one table a command works on: the --table file (or
    $ICX_TABLE) when set, otherwise a table built in memory.
    """

    def __init__(self, config: Config):
        self.config = config
        self._table: Optional[ComplexityTable] = None

    def get(self, needed: int = 1, auto_build: bool = False,
            what: str = "this command") -> ComplexityTable:
        """
        Args:
            needed: Smallest limit the command can work with
            auto_build: Grow an in-memory build to needed instead of failing
            what: Operation named in the error message
        """
        if self._table is None:
            if self.config.table_path is not None:
                self._table = load_table(self.config.table_path)
            else:
                limit = max(self.config.limit, needed) if auto_build else self.config.limit
                self._table = build_table(limit)
        if self._table.limit < needed:
            raise TableTooSmallError(needed, self._table.limit, what)
        return self._table


Handler = Callable[[argparse.Namespace, Config, TableSource], Output]


def _one_or_many(rows: List[Dict]) -> Output:
    if len(rows) == 1:
        return Output(summary=rows[0])
    return Output(summary={"count": len(rows)}, rows=rows, rows_key="results")


def cmd_build(args, config: Config, source: TableSource) -> Output:
    path = config.table_path or DATA_DIR / f"icx_{config.limit}.tbl"
    table = build_table(config.limit)
    save_table(table, path)
    return Output(summary={"limit": table.limit, "bytes": table.nbytes, "path": str(path)})


def cmd_query(args, config: Config, source: TableSource) -> Output:
    table = source.get()
    rows = [{"n": n, "cost": table.query(n)} for n in args.n]
    output = _one_or_many(rows)
    output.text = "\n".join(str(row["cost"]) for row in rows)
    return output


def cmd_expr(args, config: Config, source: TableSource) -> Output:
    if args.text is not None:
        expr = parse(args.text)
        summary = {"value": expr.value, "ones": expr.ones, "depth": expr.depth, "expression": render(expr)}
        return Output(summary=summary, text=f"{expr.value} {expr.ones}")
    if args.n is None:
        raise UsageError("expr needs n or --parse TEXT")
    table = source.get()
    expr = reconstruct(table, args.n)
    summary = {
        "n": args.n, "cost": table.query(args.n), "ones": expr.ones,
        "depth": expr.depth, "expression": render(expr),
    }
    return Output(summary=summary, text=render(expr))


def cmd_defect(args, config: Config, source: TableSource) -> Output:
    table = source.get()
    return _one_or_many([defect_record(table, n, args.sigma).records() for n in args.n])


def cmd_census(args, config: Config, source: TableSource) -> Output:
    table = source.get(3 ** args.mmax, what=f"census up to 3^{args.mmax}")
    matrix = census(table, args.sigma, args.kmax, args.mmax)
    summary = {
        "sigma": args.sigma, "k_max": args.kmax, "m_max": args.mmax,
        "U_B_totals": [matrix.U_B_total(k) for k in range(1, args.kmax + 1)],
        "settled": [entry.records() for entry in matrix.settled],
    }
    return Output(summary=summary, rows=matrix.records(), rows_key="cells")


def _report_output(reports: List[VerificationReport]) -> Output:
    prefixed = len(reports) > 1
    checks = []
    for report in reports:
        for check in report.checks:
            row = check.model_dump()
            if prefixed:
                row["check_id"] = f"{report.suite}:{check.check_id}"
            checks.append(row)
    failures = [row["check_id"] for row in checks if row["status"] == "fail"]
    summary = {"suite": "+".join(r.suite for r in reports), "passed": not failures, "failures": failures}
    scan = [r.scan_limit for r in reports if r.scan_limit is not None]
    if scan:
        summary["verified_up_to"] = scan[0]
    settled = [entry for r in reports for entry in r.settled]
    if settled:
        summary["settled"] = settled
    text = "\n".join(f"({row['check_id']}) {row['status']}: {row['description']}" for row in checks)
    return Output(summary=summary, rows=checks, rows_key="checks", text=text, status=1 if failures else 0)


def cmd_verify(args, config: Config, source: TableSource) -> Output:
    reports = []
    census_matrix = None
    if args.suite in ("paper", "all"):
        explicit = getattr(args, "limit", None)
        needed = explicit or (1 if config.table_path else DEFAULT_SCAN_LIMIT)
        table = source.get(needed, auto_build=True, what="verification suite")
        scan_limit = explicit or table.limit
        verifier = PaperSetVerifier(table, args.sigma, scan_limit)
        reports.append(verifier.report(config.threads))
        census_matrix = verifier.census
    if args.suite in ("constants", "all"):
        params = ClassificationParams(sigma=args.sigma)
        reports.append(verify_constant_system(params, census_matrix=census_matrix))
    return _report_output(reports)


def cmd_drb(args, config: Config, source: TableSource) -> Output:
    m = args.base
    if m > HUGE_BASE_THRESHOLD:
        estimate = memory_estimate(m) + estimate_build_bytes(m)
        message = f"certifying base {m} needs about {estimate / 2 ** 20:.1f} MiB"
        if not config.huge:
            raise UsageError(f"{message}; pass --huge to proceed")
        print(message, file=sys.stderr)
        logger.info(message)
    needed = m if args.scan is None else max(m, m * args.scan + m - 1)
    table = source.get(needed, auto_build=True, what=f"digit bounds for base {m}")
    bounds = certify_base(m, table)
    rows = bounds.records()
    if args.scan is not None:
        for row in rows:
            row["empirical"] = empirical_lower(m, row["r"], args.scan, table)
    summary = {"base": m, "sum": bounds.total, "constant": bounds.averaged_constant, "max_bound": bounds.max_bound}
    text = f"sum {bounds.total}\nconstant {bounds.averaged_constant:.4f}"
    return Output(summary=summary, rows=rows, rows_key="bounds", text=text)


def cmd_synth(args, config: Config, source: TableSource) -> Output:
    table = source.get(max(args.kmax - 1, args.base), auto_build=True, what="synthesis")
    bounds = certify_base(args.base, table)
    result = synthesize(args.n, args.base, (args.kmin, args.kmax), bounds, table)
    return Output(summary=result.records())


def cmd_params(args, config: Config, source: TableSource) -> Output:
    return Output(summary=paper_params(args.n).records())


def _default_grid(limit: int) -> List[int]:
    grid = []
    N = 10
    while N <= limit:
        grid.append(N)
        N *= 10
    if not grid or grid[-1] != limit:
        grid.append(limit)
    return grid


def cmd_stats(args, config: Config, source: TableSource) -> Output:
    kind = args.kind
    if kind == "discrepancy":
        if args.upto is None:
            raise UsageError("stats discrepancy needs --n")
        points = s_j_points(args.upto, args.base, args.digits, args.K)
        star, extreme = star_discrepancy(points.points), extreme_discrepancy(points.points)
        summary = {
            "n": str(args.upto), "m": args.base, "j": args.digits, "K": args.K,
            "star": star, "star_value": float(star), "extreme": extreme, "extreme_value": float(extreme),
        }
        return Output(summary=summary, rows=points.records(), rows_key="points")

    table = source.get(max(args.grid) if args.grid else 1, what=f"stats {kind}")
    grid = args.grid or _default_grid(table.limit)
    upto = args.upto or table.limit
    if kind == "density":
        scan = density_scan(table, args.threshold, grid)
        summary = {"threshold": scan.threshold, "ambiguous": scan.ambiguous}
        return Output(summary=summary, rows=scan.records())
    if kind == "growth":
        report = defect_growth(table, args.radius, grid)
        return Output(summary={"r": report.r, "exponent": report.exponent}, rows=report.records())
    if kind == "ratio":
        result = ratio_scan(table, upto)
        rows = ratio_records(table, upto) if args.records else None
        return Output(summary=result.records(), rows=rows)
    report = conjecture_scan(table, upto)
    summary = {"limit": report.limit, "checked": report.checked,
               "violation_count": len(report.violations), "passed": report.passed}
    return Output(summary=summary, rows=report.records(), rows_key="violations",
                  status=0 if report.passed else 1)


COMMANDS: Dict[str, Handler] = {
    "build": cmd_build,
    "query": cmd_query,
    "expr": cmd_expr,
    "defect": cmd_defect,
    "census": cmd_census,
    "verify": cmd_verify,
    "drb": cmd_drb,
    "synth": cmd_synth,
    "params": cmd_params,
    "stats": cmd_stats,
}
