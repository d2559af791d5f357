import io
import pandas as pd
from typing import Dict, List, Optional, Sequence, Union
from pathlib import Path


def records_to_csv(records: List[Dict], columns: Optional[Sequence[str]] = None) -> str:
    """Render a list of flat records as CSV text (header included, no index)"""
    df = pd.DataFrame.from_records(records, columns=columns)
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def load_records(source: Union[str, Path, io.StringIO]) -> List[Dict]:
    """Load CSV rows back as records"""
    df = pd.read_csv(source, dtype=str, keep_default_na=False)
    return df.to_dict('records')
