"""Diagonal bijection between positive integers and pairs (k, m).

The deduction engine walks rule index / resource budget pairs in this order,
so every (k, m) combination is eventually reached.
"""

from __future__ import annotations

from math import isqrt


def pair_index(i: int) -> tuple[int, int]:
    """Map i >= 1 to (k, m); diagonal d holds (1,d), (2,d-1), ..., (d,1)."""
    if i < 1:
        raise ValueError("index must be positive")
    d = (isqrt(8 * i - 7) + 1) // 2
    j = i - (d - 1) * d // 2
    return j, d + 1 - j


def pair_rank(k: int, m: int) -> int:
    """Inverse of pair_index."""
    if k < 1 or m < 1:
        raise ValueError("pair components must be positive")
    d = k + m - 1
    return (d - 1) * d // 2 + k
