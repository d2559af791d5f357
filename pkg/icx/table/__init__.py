from .complexity_table import ComplexityTable, build_table, estimate_build_bytes, query
from .oracle import brute_costs, brute_oracle
from .table_store import load_table, save_table

__all__ = [
    "ComplexityTable",
    "build_table",
    "estimate_build_bytes",
    "query",
    "brute_costs",
    "brute_oracle",
    "load_table",
    "save_table",
    ]
