"""
Exception hierarchy shared by every icx module.
"""

from typing import Iterable, List


class IcxError(Exception):
    """Base class for all icx errors."""


class TableRangeError(IcxError, IndexError):
    """A number lies outside the range covered by a complexity table."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"n={n} is outside the table range [1, {limit}]")


class TableTooSmallError(IcxError, ValueError):
    """An operation needs entries beyond the table limit."""

    def __init__(self, required: int, available: int, what: str = "operation"):
        self.required = required
        self.available = available
        super().__init__(
            f"{what} needs a table up to {required}, but the table limit is {available}"
        )


class LimitTooLargeError(IcxError, ValueError):
    """Requested table limit cannot be built."""


class TableFormatError(IcxError):
    """A table file failed header or payload validation."""


class BadMagicError(TableFormatError):
    pass


class VersionMismatchError(TableFormatError):
    pass


class TruncatedTableError(TableFormatError):
    pass


class TrailingDataError(TableFormatError):
    pass


class ExpressionSyntaxError(IcxError, ValueError):
    """Malformed expression text."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class BoundaryAmbiguityError(IcxError, ArithmeticError):
    """A defect sits too close to a class boundary to be binned safely."""

    def __init__(self, values: Iterable[int], sigma: float, guard: float):
        self.values: List[int] = list(values)
        shown = ", ".join(str(v) for v in self.values[:10])
        more = "" if len(self.values) <= 10 else f" (+{len(self.values) - 10} more)"
        super().__init__(
            f"defect within {guard:g} of a multiple of sigma={sigma:g} for n = {shown}{more}"
        )


class SchemaError(IcxError, ValueError):
    """Invalid digit-schema or synthesis request."""


class UsageError(IcxError):
    """Command-line request that cannot be honoured as given."""
