"""
Complexity tables shared across test modules, built once per process.
"""

import atexit
import shutil
import tempfile
from functools import lru_cache
from pathlib import Path

from icx.table import ComplexityTable, build_table, save_table
from icx.table.kernels import NUMBA_AVAILABLE

SMALL = 2000
DESK = 10 ** 4
SCAN = 3 ** 13
LARGE = 10 ** 6
HUGE = 10 ** 7

NEEDS_NUMBA = "tables above 3^13 are only practical with the compiled kernel"

_workdir = Path(tempfile.mkdtemp(prefix="icx-tests-"))
atexit.register(shutil.rmtree, _workdir, ignore_errors=True)


@lru_cache(maxsize=None)
def table(limit: int) -> ComplexityTable:
    return build_table(limit)


@lru_cache(maxsize=None)
def table_file(limit: int) -> Path:
    path = _workdir / f"table_{limit}.icx"
    save_table(table(limit), path)
    return path


def scratch_path(name: str) -> Path:
    return _workdir / name


__all__ = [
    "NUMBA_AVAILABLE",
    "NEEDS_NUMBA",
    "SMALL",
    "DESK",
    "SCAN",
    "LARGE",
    "HUGE",
    "table",
    "table_file",
    "scratch_path",
    ]
