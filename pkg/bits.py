"""Bitmask encoding of finite sets: bit e is set iff element e is present."""
from itertools import combinations
from typing import Iterable, Iterator, Tuple


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def from_mask(mask: int) -> Tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def lex_key(mask: int) -> Tuple[int, ...]:
    """Sort key realizing lex order on equal-size sets"""
    return from_mask(mask)


def interval_mask(lo: int, hi: int) -> int:
    """Mask of [lo, hi]; empty when hi < lo"""
    if hi < lo:
        return 0
    return ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)


def ksubset_masks(elements: Iterable[int], k: int) -> Iterator[int]:
    """k-subsets of the given increasing elements, in lex order"""
    for combo in combinations(tuple(elements), k):
        yield to_mask(combo)


def lex_le_masks(a: int, b: int) -> bool:
    # a <= b iff a == b or the least element of the symmetric difference lies in a
    d = a ^ b
    return d == 0 or bool(a & (d & -d))


def min_element(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def max_element(mask: int) -> int:
    return mask.bit_length() - 1
