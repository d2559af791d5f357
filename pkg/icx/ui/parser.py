import argparse
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from icx.config import (
    DEFAULT_FORMAT,
    DEFAULT_K_RANGE,
    DEFAULT_LIMIT,
    DEFAULT_SYNTH_BASE,
    DEFAULT_THREADS,
    OUTPUT_FORMATS,
    SIGMA,
    TABLE_PATH,
)
from icx.util.numbers import parse_int, parse_real

STATS_KINDS = ("density", "growth", "ratio", "discrepancy", "conjecture")


class Config(BaseModel):
    """Global CLI settings after flags and environment are merged."""
    table_path: Optional[Path] = None
    limit: int = Field(DEFAULT_LIMIT, ge=1)
    format: Literal["json", "csv", "text"] = "json"
    threads: int = Field(DEFAULT_THREADS, ge=1)
    huge: bool = False
    timestamp: bool = False
    verbose: bool = False


def integer(text: str) -> int:
    try:
        return parse_int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def real(text: str) -> float:
    try:
        return parse_real(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def integer_list(text: str) -> List[int]:
    return [integer(part) for part in text.split(",") if part.strip()]


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--table", dest="table_path", default=argparse.SUPPRESS,
                       help="table file (default: $ICX_TABLE)")
    flags.add_argument("--limit", type=integer, default=argparse.SUPPRESS,
                       help=f"table limit to build when no file is given (default {DEFAULT_LIMIT})")
    flags.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS)
    flags.add_argument("--threads", type=integer, default=argparse.SUPPRESS)
    flags.add_argument("--huge", action="store_true", default=argparse.SUPPRESS,
                       help="allow digit certification for very large bases")
    flags.add_argument("--timestamp", action="store_true", default=argparse.SUPPRESS,
                       help="stamp JSON reports with the current time")
    flags.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    return flags


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    # no prefix matching: stats flags such as --t would collide with --table
    parser = argparse.ArgumentParser(
        prog="icx", parents=[flags], allow_abbrev=False,
        description="Integer complexity tables, expressions, digit bounds and verification suites.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name: str, summary: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[flags], help=summary, description=summary, allow_abbrev=False)

    command("build", "build a complexity table and write it to --table")

    sub = command("query", "print ||n||")
    sub.add_argument("n", type=integer, nargs="+")

    sub = command("expr", "print an optimal expression for n, or check expression text")
    sub.add_argument("n", type=integer, nargs="?")
    sub.add_argument("--parse", dest="text", help="expression text to parse and evaluate")

    sub = command("defect", "defect, leader flag and class of n")
    sub.add_argument("n", type=integer, nargs="+")
    sub.add_argument("--sigma", type=real, default=SIGMA)

    sub = command("census", "U_B(k, m) and U_N(k, m) counts")
    sub.add_argument("--kmax", type=integer, default=6)
    sub.add_argument("--mmax", type=integer, default=8)
    sub.add_argument("--sigma", type=real, default=SIGMA)

    sub = command("verify", "run a verification suite")
    sub.add_argument("--suite", choices=("paper", "constants", "all"), default="paper")
    sub.add_argument("--sigma", type=real, default=SIGMA)

    sub = command("drb", "certify digit bounds for a base")
    sub.add_argument("--base", type=integer, required=True)
    sub.add_argument("--scan", type=integer, default=None,
                     help="also report empirical lower estimates over 1 <= n <= SCAN")

    sub = command("synth", "synthesize an expression for a large n")
    sub.add_argument("n", type=integer)
    sub.add_argument("--base", type=integer, default=DEFAULT_SYNTH_BASE)
    sub.add_argument("--kmin", type=integer, default=DEFAULT_K_RANGE[0])
    sub.add_argument("--kmax", type=integer, default=DEFAULT_K_RANGE[1])

    sub = command("params", "p and K of the asymptotic construction")
    sub.add_argument("n", type=integer)

    sub = command("stats", "empirical scans")
    sub.add_argument("kind", choices=STATS_KINDS)
    sub.add_argument("--n", dest="upto", type=integer, default=None,
                     help="scan bound (ratio, conjecture) or target n (discrepancy)")
    sub.add_argument("--grid", type=integer_list, default=None, help="comma-separated N values")
    sub.add_argument("--t", dest="threshold", type=real, default=3.06)
    sub.add_argument("--r", dest="radius", type=real, default=1.0)
    sub.add_argument("--m", dest="base", type=integer, default=2)
    sub.add_argument("--j", dest="digits", type=integer, default=20)
    sub.add_argument("--K", dest="K", type=integer, default=64)
    sub.add_argument("--records", action="store_true", help="ratio: list every running maximum")
    return parser


def resolve_config(args: argparse.Namespace) -> Config:
    """Merge parsed flags over environment defaults."""
    values = {
        "table_path": getattr(args, "table_path", TABLE_PATH),
        "limit": getattr(args, "limit", DEFAULT_LIMIT),
        "format": getattr(args, "format", DEFAULT_FORMAT),
        "threads": getattr(args, "threads", DEFAULT_THREADS),
        "huge": getattr(args, "huge", False),
        "timestamp": getattr(args, "timestamp", False),
        "verbose": getattr(args, "verbose", False),
    }
    return Config(**values)
