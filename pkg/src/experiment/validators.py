"""
Validators for experiment configuration values.

Each helper returns (is_valid, parsed value or None), so the caller decides
how to report the failure.
"""
from typing import Callable, TypeVar

T = TypeVar("T")

MAX_SEED = 2**64 - 1


def validate_int(raw: str, minimum: int | None = None, maximum: int | None = None) -> tuple[bool, int | None]:
    """
    Parse a decimal integer and check its range.

    Args:
        raw: Text to parse
        minimum: Smallest allowed value (inclusive)
        maximum: Largest allowed value (inclusive)

    Returns:
        Tuple of (is_valid, value or None)
    """
    try:
        value = int(raw.strip(), 10)
    except ValueError:
        return False, None
    if minimum is not None and value < minimum:
        return False, None
    if maximum is not None and value > maximum:
        return False, None
    return True, value


def validate_probability(raw: str) -> tuple[bool, float | None]:
    """Parse a real number in [0, 1]."""
    try:
        value = float(raw.strip())
    except ValueError:
        return False, None
    if not 0.0 <= value <= 1.0:
        return False, None
    return True, value


def validate_seed(raw: str) -> tuple[bool, int | None]:
    return validate_int(raw, 0, MAX_SEED)


def validate_choice(raw: str, parse: Callable[[str], T]) -> tuple[bool, T | None]:
    """Parse with an enum-like constructor, rejecting unknown names."""
    try:
        return True, parse(raw.strip().lower())
    except ValueError:
        return False, None


def validate_list(raw: str, item: Callable[[str], tuple[bool, T | None]]) -> tuple[bool, tuple[T, ...] | None]:
    """Comma-separated list; an empty value gives an empty tuple."""
    parts = [part.strip() for part in raw.split(",")]
    if parts == [""]:
        return True, ()
    values = []
    for part in parts:
        ok, value = item(part)
        if not ok:
            return False, None
        values.append(value)
    return True, tuple(values)
