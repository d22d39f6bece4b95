"""Trend summaries for benchmark tables.

The functions accept array-like inputs and return plain Python scalars so
they compose with pandas columns straight from a bench CSV.
"""

from __future__ import annotations

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from spsp_search.utils import FloatArray, ensure_1d_array


def _validate_pair(x: FloatArray, y: FloatArray) -> None:
    """Validate two paired samples.

    Raises:
        ValueError: If the samples are empty, differ in length or contain
            non-finite values.
    """

    if x.size == 0 or y.size == 0:
        raise ValueError("Samples must contain at least one observation.")
    if x.size != y.size:
        raise ValueError("Samples must have the same length.")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise ValueError("Samples must only contain finite numeric values.")


def loglog_slope(x: ArrayLike, y: ArrayLike) -> float:
    """Return the least-squares slope of ``log y`` against ``log x``.

    A slope near one means ``y`` grows linearly with ``x``.

    Raises:
        ValueError: If fewer than two points are given or any value is not
            positive.

    Example:
        >>> round(loglog_slope([1, 10, 100], [2, 20, 200]), 6)
        1.0
    """

    array_x = ensure_1d_array(x)
    array_y = ensure_1d_array(y)
    _validate_pair(array_x, array_y)
    if array_x.size < 2:
        raise ValueError("A slope needs at least two points.")
    if (array_x <= 0).any() or (array_y <= 0).any():
        raise ValueError("Log-log fits require positive values.")
    if np.unique(array_x).size < 2:
        raise ValueError("x must take at least two distinct values.")
    slope, _ = np.polyfit(np.log(array_x), np.log(array_y), 1)
    return float(slope)


def dominance_fraction(
    a: ArrayLike, b: ArrayLike, mask: ArrayLike | None = None
) -> float:
    """Return the fraction of rows where ``a <= b``, optionally restricted by ``mask``.

    Example:
        >>> dominance_fraction([1, 5, 2], [2, 3, 2])
        0.6666666666666666
    """

    array_a = ensure_1d_array(a)
    array_b = ensure_1d_array(b)
    _validate_pair(array_a, array_b)
    if mask is None:
        selected = np.ones(array_a.size, dtype=bool)
    else:
        selected = np.asarray(mask, dtype=bool)
        if selected.shape != array_a.shape:
            raise ValueError("mask must match the samples in length.")
    if not selected.any():
        raise ValueError("mask selects no rows.")
    return float(np.mean(array_a[selected] <= array_b[selected]))


def crossover_point(
    frame: pd.DataFrame,
    *,
    fast: str = "t_sig_ms",
    slow: str = "t_gcd_ms",
    key: str = "k",
) -> float | None:
    """Return the smallest ``key`` from which ``fast`` stays at or below ``slow``.

    Applied to a bench table this suggests a cutoff: below it the gcd chain
    is cheaper, above it sieving is.
    """

    missing = [column for column in (fast, slow, key) if column not in frame.columns]
    if missing:
        raise ValueError(f"Columns missing from bench frame: {missing}")
    if frame.empty:
        return None
    ordered = frame.sort_values(key)
    wins = (ordered[fast] <= ordered[slow]).to_numpy()
    if not wins[-1]:
        return None
    losses = np.flatnonzero(~wins)
    first = 0 if losses.size == 0 else int(losses[-1]) + 1
    return float(ordered[key].iloc[first])


__all__ = ["crossover_point", "dominance_fraction", "loglog_slope"]
