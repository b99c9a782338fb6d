"""Family metrics and transformations: degrees, diversity, ν, τ, shadows, shifts."""
import logging
from collections import Counter
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from bits import from_mask, min_element
from core import binom
from exceptions import GroundMismatchError, ParameterRangeError
from models import FamilyStats, SetFamily, ShiftMode

logger = logging.getLogger(__name__)


def find_disjoint_pair(F: SetFamily, G: Optional[SetFamily] = None) -> Optional[Tuple[int, int]]:
    """First disjoint pair (as masks) inside F, or across F and G"""
    if G is not None:
        if F.n != G.n:
            raise GroundMismatchError(F.n, G.n)
        right = G.sorted_masks()
        for x in F.sorted_masks():
            for y in right:
                if not x & y:
                    return x, y
        return None
    members = F.sorted_masks()
    for index, x in enumerate(members):
        for y in members[index + 1:]:
            if not x & y:
                return x, y
    return None


def is_intersecting(F: SetFamily, G: Optional[SetFamily] = None) -> bool:
    return find_disjoint_pair(F, G) is None


def degrees(F: SetFamily) -> List[int]:
    """degrees[e] = number of members containing e (index 0 unused)"""
    out = [0] * (F.n + 1)
    for mask in F.masks:
        for e in from_mask(mask):
            out[e] += 1
    return out


def max_degree(F: SetFamily) -> Tuple[int, int]:
    """(element, degree) of maximum degree, smallest element on ties"""
    deg = degrees(F)
    if F.n == 0:
        return 0, 0
    best = max(range(1, F.n + 1), key=lambda e: (deg[e], -e))
    return best, deg[best]


def subset_degree(F: SetFamily, t: int) -> int:
    """Minimum over t-subsets of [n] of the number of members containing it"""
    if not 1 <= t < F.k:
        raise ParameterRangeError("t", t, f"1 <= t < k={F.k}")
    counts: Counter = Counter()
    for mask in F.masks:
        counts.update(combinations(from_mask(mask), t))
    if len(counts) < binom(F.n, t):
        return 0
    return min(counts.values())


def matching_number(F: SetFamily) -> int:
    """Maximum number of pairwise disjoint members"""
    members = list(F.masks)
    memo: Dict[int, int] = {}

    def best(avail: int) -> int:
        if avail in memo:
            return memo[avail]
        live = [m for m in members if m & avail == m]
        if not live:
            memo[avail] = 0
            return 0
        union = 0
        for m in live:
            union |= m
        e = min_element(union)
        bit = 1 << e
        value = best(avail & ~bit)
        for m in live:
            if m & bit:
                value = max(value, 1 + best(avail & ~m))
        memo[avail] = value
        return value

    return best(F.union_mask())


def covering_number(F: SetFamily) -> int:
    """Minimum size of a set meeting every member"""
    members = F.sorted_masks()
    if not members:
        return 0

    def covers(chosen: int, depth: int) -> bool:
        for m in members:
            if not m & chosen:
                if depth == 0:
                    return False
                return any(covers(chosen | 1 << e, depth - 1) for e in from_mask(m))
        return True

    depth = 0
    while not covers(0, depth):
        depth += 1
    return depth


def family_stats(F: SetFamily, t: Optional[int] = None, deep: bool = False) -> FamilyStats:
    element, delta = max_degree(F)
    size = len(F)
    extra = {}
    if t is not None:
        extra.update(t=t, delta_t=subset_degree(F, t))
    if deep:
        extra.update(nu=matching_number(F), tau=covering_number(F))
        logger.debug(f"deep stats size={size}: nu={extra['nu']} tau={extra['tau']}")
    return FamilyStats(
        size=size,
        max_degree_element=element,
        max_degree=delta,
        diversity=size - delta,
        trivial=delta == size,
        **extra,
    )


def shadow(F: SetFamily) -> SetFamily:
    """All (k-1)-sets contained in some member"""
    if F.k < 1:
        raise ParameterRangeError("k", F.k, "k >= 1")
    out = set()
    for mask in F.masks:
        rest = mask
        while rest:
            low = rest & -rest
            out.add(mask ^ low)
            rest ^= low
    return SetFamily.trusted(F.n, F.k - 1, out)


def _shift_masks(masks: frozenset, i: int, j: int) -> frozenset:
    bi, bj = 1 << i, 1 << j
    out = set()
    for mask in masks:
        if mask & bj and not mask & bi:
            moved = mask ^ bj ^ bi
            out.add(mask if moved in masks else moved)
        else:
            out.add(mask)
    return frozenset(out)


def _shift_pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def shift(F: SetFamily, i: Optional[int] = None, j: Optional[int] = None,
          mode: ShiftMode = ShiftMode.SINGLE):
    """(i,j)-shift replacing j by i where that does not collide.

    single applies one shift, closure shifts until every S_{i,j} is the
    identity, test reports whether F is already shifted.
    """
    mode = ShiftMode(mode)
    if mode is ShiftMode.SINGLE:
        if i is None or j is None or not 1 <= i < j <= F.n:
            raise ParameterRangeError("(i,j)", (i, j), f"1 <= i < j <= n={F.n}")
        return SetFamily.trusted(F.n, F.k, _shift_masks(F.masks, i, j))

    pairs = _shift_pairs(F.n)
    if mode is ShiftMode.TEST:
        return all(_shift_masks(F.masks, a, b) == F.masks for a, b in pairs)

    masks = F.masks
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            moved = _shift_masks(masks, a, b)
            if moved != masks:
                masks = moved
                changed = True
    return SetFamily.trusted(F.n, F.k, masks)


def shift_pair(A: SetFamily, B: SetFamily) -> Tuple[SetFamily, SetFamily]:
    """Apply every S_{i,j} to both families at once until neither changes"""
    if A.n != B.n:
        raise GroundMismatchError(A.n, B.n)
    left, right = A.masks, B.masks
    changed = True
    while changed:
        changed = False
        for a, b in _shift_pairs(A.n):
            new_left, new_right = _shift_masks(left, a, b), _shift_masks(right, a, b)
            if new_left != left or new_right != right:
                left, right = new_left, new_right
                changed = True
    return SetFamily.trusted(A.n, A.k, left), SetFamily.trusted(B.n, B.k, right)


def decompose(F: SetFamily, x: int) -> Tuple[SetFamily, SetFamily]:
    """(F(x), F(not x)): members through x with x removed, and members avoiding x"""
    if not 1 <= x <= F.n:
        raise ParameterRangeError("x", x, f"1 <= x <= n={F.n}")
    bit = 1 << x
    link = [m ^ bit for m in F.masks if m & bit]
    rest = [m for m in F.masks if not m & bit]
    return SetFamily.trusted(F.n, F.k - 1, link), SetFamily.trusted(F.n, F.k, rest)


def _common(masks) -> int:
    out = -1
    for m in masks:
        out &= m
    return out


def is_typical_minimal(G: SetFamily) -> bool:
    members = G.sorted_masks()
    if len(members) < 2:
        raise ParameterRangeError("|G|", len(members), "|G| >= 2")
    whole = _common(members)
    for index in range(len(members)):
        if _common(members[:index] + members[index + 1:]) == whole:
            return False
    if len(members) == 2:
        return True
    deg = degrees(G)
    return sum(1 for d in deg if d >= 2) > len(members)


def _codegrees(F: SetFamily) -> Dict[Tuple[int, int], int]:
    out: Counter = Counter()
    for mask in F.masks:
        out.update(combinations(from_mask(mask), 2))
    return out


def is_isomorphic(F: SetFamily, G: SetFamily) -> bool:
    """Exact test for a permutation of [n] carrying F onto G"""
    if (F.n, F.k, len(F)) != (G.n, G.k, len(G)):
        return False
    deg_f, deg_g = degrees(F), degrees(G)
    if sorted(deg_f[1:]) != sorted(deg_g[1:]):
        return False
    co_f, co_g = _codegrees(F), _codegrees(G)
    if sorted(co_f.values()) != sorted(co_g.values()):
        return False

    order = sorted((e for e in range(1, F.n + 1) if deg_f[e]), key=lambda e: (-deg_f[e], e))
    targets = [e for e in range(1, G.n + 1) if deg_g[e]]
    mapping: Dict[int, int] = {}
    used = set()

    def codeg(table, x: int, y: int) -> int:
        return table.get((x, y) if x < y else (y, x), 0)

    def extend(index: int) -> bool:
        if index == len(order):
            image = frozenset(sum(1 << mapping[e] for e in from_mask(m)) for m in F.masks)
            return image == G.masks
        e = order[index]
        for g in targets:
            if g in used or deg_g[g] != deg_f[e]:
                continue
            if any(codeg(co_f, e, prev) != codeg(co_g, g, mapping[prev]) for prev in order[:index]):
                continue
            mapping[e] = g
            used.add(g)
            if extend(index + 1):
                return True
            del mapping[e]
            used.discard(g)
        return False

    return extend(0)
