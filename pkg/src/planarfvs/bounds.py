"""Closed-form lower bounds."""

from __future__ import annotations


def grid_lower_bound(rows: int, cols: int) -> int:
    """Lower bound on the minimum FVS of the rows x cols grid: ceil(((rows-1)(cols-1) + 1) / 3)."""
    if rows < 2 or cols < 2:
        raise ValueError("grid needs rows, cols >= 2")
    return -(-((rows - 1) * (cols - 1) + 1) // 3)
