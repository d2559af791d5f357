"""
Parsing of numeric command-line arguments.

Accepted forms: plain integers with optional underscores (``1_000_000``),
scientific notation with an integral value (``1e7``, ``2.5e3``) and powers
(``3^13``).
"""

import re
from decimal import Decimal, InvalidOperation

_POWER = re.compile(r"^\s*(\d[\d_]*)\s*\^\s*(\d[\d_]*)\s*$")


def parse_int(text: str) -> int:
    """
    Parse an integer argument.

    Args:
        text: Argument text

    Returns:
        The integer value

    Raises:
        ValueError: If the text is not an integral number
    """
    if not isinstance(text, str):
        return int(text)
    match = _POWER.match(text)
    if match:
        base, exponent = (int(group.replace("_", "")) for group in match.groups())
        return base ** exponent
    cleaned = text.strip().replace("_", "")
    if re.fullmatch(r"[+-]?\d+", cleaned):
        return int(cleaned)
    try:
        value = Decimal(cleaned)
    except InvalidOperation:
        raise ValueError(f"not a number: {text!r}")
    if not value.is_finite() or value != value.to_integral_value():
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def parse_real(text: str) -> float:
    """Parse a real argument, allowing underscores."""
    try:
        return float(text.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"not a number: {text!r}")
