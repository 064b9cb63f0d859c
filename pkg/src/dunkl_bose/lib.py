import numpy as np

from dunkl_bose.config import settings


def format_float(value: float, digits: int | None = None) -> str:
    """Locale-independent fixed-significance rendering of a single value."""

    digits = digits or settings.FLOAT_SIGNIFICANT_DIGITS
    if value == 0.0:
        return "0"

    return format(float(value), f".{digits}g")


def round_significant(value: float, digits: int | None = None) -> float:
    return float(format_float(value, digits))


def insert_sorted(grid: np.ndarray, value: float, rtol: float = 1e-12) -> np.ndarray:
    """Insert `value` into an increasing grid unless a point already sits on it."""

    grid = np.asarray(grid, dtype=float)
    if grid.size == 0 or not grid[0] <= value <= grid[-1]:
        return grid
    if np.any(np.isclose(grid, value, rtol=rtol, atol=0.0)):
        return grid

    return np.insert(grid, np.searchsorted(grid, value), value)


def is_strictly_increasing(values) -> bool:
    values = np.asarray(values, dtype=float)

    return bool(np.all(np.diff(values) > 0))
