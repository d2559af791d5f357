import struct
from pathlib import Path
from typing import Union

import numpy as np
from loguru import logger

from icx.config import HEADER_SIZE, TABLE_MAGIC, TABLE_VERSION
from icx.errors import (
    BadMagicError,
    TrailingDataError,
    TruncatedTableError,
    VersionMismatchError,
)
from icx.table.complexity_table import ComplexityTable
from icx.util import logging

# magic, version, reserved, limit
HEADER = struct.Struct("<4sHHQ")


def encode_header(limit: int) -> bytes:
    return HEADER.pack(TABLE_MAGIC, TABLE_VERSION, 0, limit)


@logging
def save_table(table: ComplexityTable, path: Union[str, Path]) -> None:
    """
    Write a table file: 16-byte header followed by one byte per entry.

    Args:
        table: Table to persist
        path: Destination file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as handle:
        handle.write(encode_header(table.limit))
        handle.write(table.costs.tobytes())
    logger.info(f"Saved table up to {table.limit} to {path}")


def decode_table(data: bytes) -> ComplexityTable:
    """
    Validate and decode the bytes of a table file.

    Raises:
        TruncatedTableError: Header shorter than 16 bytes, or fewer payload bytes than declared
        BadMagicError: Magic is not ICX1
        VersionMismatchError: Unsupported format version
        TrailingDataError: More payload bytes than declared
    """
    if len(data) < HEADER_SIZE:
        raise TruncatedTableError(f"file has {len(data)} bytes, shorter than the {HEADER_SIZE}-byte header")
    magic, version, _reserved, limit = HEADER.unpack_from(data, 0)
    if magic != TABLE_MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {TABLE_MAGIC!r}")
    if version != TABLE_VERSION:
        raise VersionMismatchError(f"format version {version}, expected {TABLE_VERSION}")
    payload = len(data) - HEADER_SIZE
    if payload < limit:
        raise TruncatedTableError(f"header declares limit {limit} but the payload has {payload} bytes")
    if payload > limit:
        raise TrailingDataError(f"header declares limit {limit} but the payload has {payload} bytes")
    if limit == 0:
        raise TruncatedTableError("header declares an empty table")
    costs = np.frombuffer(data, dtype=np.uint8, count=limit, offset=HEADER_SIZE)
    return ComplexityTable(costs, copy=False)


@logging
def load_table(path: Union[str, Path]) -> ComplexityTable:
    """
    Load a table file written by save_table.

    Args:
        path: Table file

    Returns:
        The decoded table
    """
    path = Path(path)
    data = path.read_bytes()
    table = decode_table(data)
    logger.info(f"Loaded table up to {table.limit} from {path}")
    return table
