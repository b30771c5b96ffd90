"""Subsets of {0, ..., n-1} encoded as Python ints."""

from typing import Iterable


def from_elements(elements: Iterable[int]) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << e
    return bits


def members(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def size(bits: int) -> int:
    return bits.bit_count()


def full(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def sort_key(bits: int) -> tuple:
    # size first, then the sorted element list compared lexicographically
    return (bits.bit_count(), tuple(members(bits)))
