"""Utility helpers shared across spsp_search modules."""

from spsp_search.utils.array import (
    BoolArray,
    FloatArray,
    IntArray,
    ensure_1d_array,
    ensure_int_range,
)

__all__ = ["BoolArray", "FloatArray", "IntArray", "ensure_1d_array", "ensure_int_range"]
