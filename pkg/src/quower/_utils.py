"""
Internal utility functions for the quower package.

These functions are intended for internal use only and are not part of the public API.
"""
from __future__ import annotations

from typing import Any, Iterable, Iterator


def _swap_dict_keys_values(original_dict: dict[Any, Any]) -> dict[Any, Any]:
    """Swaps the keys and values of a one-to-one dictionary (power table -> logarithm table).

    Args:
        original_dict (dict): Original dictionary

    Returns:
        dict: Swapped dictionary
    """
    swapped_dict = {}
    for key, value in original_dict.items():
        swapped_dict[value] = key
    return swapped_dict


def _mask_of(indices: Iterable[int]) -> int:
    """Bit mask with the given bit positions set."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _iter_bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
