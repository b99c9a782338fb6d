"""Exact binomial arithmetic and k-set enumeration."""
import logging
from math import comb
from typing import Iterator, List, Tuple

from bits import ksubset_masks
from exceptions import ParameterRangeError
from models import KSet

logger = logging.getLogger(__name__)


def binom(m: int, r: int) -> int:
    """C(m, r); zero outside 0 <= r <= m"""
    if m < 0 or r < 0 or r > m:
        return 0
    return comb(m, r)


def binom_real(x: float, r: int) -> float:
    """Generalized binomial prod_{i<r} (x - i) / (r - i)"""
    if r < 0:
        raise ParameterRangeError("r", r, "r >= 0")
    value = 1.0
    for i in range(r):
        value *= (x - i) / (r - i)
    return value


def enumerate_ksets(n: int, k: int) -> Iterator[KSet]:
    """All k-subsets of [n] in lex order"""
    if not 0 <= k <= n:
        raise ParameterRangeError("k", k, f"0 <= k <= n={n}")
    for mask in ksubset_masks(range(1, n + 1), k):
        yield KSet.from_mask(mask, n)


def max_top(value: int, r: int) -> int:
    """Largest x >= r - 1 with C(x, r) <= value (value >= 0, r >= 1)"""
    lo, hi = r - 1, r + value
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if binom(mid, r) <= value:
            lo = mid
        else:
            hi = mid - 1
    return lo


def kk_cascade(m: int, k: int) -> List[Tuple[int, int]]:
    """Greedy k-cascade m = C(a_k, k) + C(a_{k-1}, k-1) + ... as (a_i, i) pairs.

    The tops a_i strictly decrease and the lower indices are consecutive.
    """
    if m < 0:
        raise ParameterRangeError("m", m, "m >= 0")
    digits: List[Tuple[int, int]] = []
    remaining = m
    i = k
    while remaining > 0 and i >= 1:
        top = max_top(remaining, i)
        digits.append((top, i))
        remaining -= binom(top, i)
        i -= 1
    if remaining:
        raise ParameterRangeError("m", m, f"representable as a {k}-cascade")
    return digits
