import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from icx.util.csv_io import records_to_csv


@dataclass
class Output:
    """
    Result of one command.

    Attributes:
        summary: Top-level JSON object
        rows: Table rows for CSV (and embedded in JSON under rows_key)
        text: Plain-text rendering; defaults to "key: value" lines of summary
        status: Process exit code
    """
    summary: Dict[str, Any]
    rows: Optional[List[Dict[str, Any]]] = None
    rows_key: str = "rows"
    text: Optional[str] = None
    status: int = 0


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _flatten(row: Dict[str, Any]) -> Dict[str, Any]:
    return {
        key: json.dumps(value, default=_jsonable) if isinstance(value, (dict, list)) else value
        for key, value in row.items()
    }


def render_output(output: Output, fmt: str, timestamp: bool = False) -> str:
    """
    Render a command result as json, csv or text.

    Args:
        output: Command result
        fmt: One of json, csv, text
        timestamp: Add generated_at to JSON output
    """
    if fmt == "json":
        payload = dict(output.summary)
        if output.rows is not None:
            payload[output.rows_key] = output.rows
        if timestamp and "generated_at" not in payload:
            payload["generated_at"] = datetime.now(timezone.utc).isoformat()
        return json.dumps(payload, indent=2, default=_jsonable) + "\n"
    if fmt == "csv":
        rows = output.rows if output.rows is not None else [output.summary]
        return records_to_csv([_flatten(row) for row in rows])
    if output.text is not None:
        return output.text.rstrip("\n") + "\n"
    return "".join(f"{key}: {_flatten({key: value})[key]}\n" for key, value in output.summary.items())
