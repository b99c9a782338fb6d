"""Lex order, initial segments L(m,a) and characteristic-set families L(S,a)."""
import logging
from itertools import islice
from typing import Iterator, Optional, Sequence, Tuple, Union

from bits import from_mask, interval_mask, ksubset_masks, lex_le_masks, min_element, to_mask
from core import binom, kk_cascade
from exceptions import GroundMismatchError, NotCrossIntersectingError, ParameterRangeError
from models import CharSet, Ground, KSet, LexSegment, SetFamily

logger = logging.getLogger(__name__)

LexOperand = Union[KSet, CharSet]


def ground_elements(ground: Ground, n: int) -> range:
    return range(ground.start, n + 1)


def lex_less_eq(A: LexOperand, B: LexOperand) -> bool:
    """A <= B iff A contains B or min(A - B) < min(B - A)"""
    if A.n != B.n:
        raise GroundMismatchError(A.n, B.n)
    return lex_le_masks(A.mask, B.mask)


def iter_lex_masks(s_mask: int, a: int, ground: Ground, n: int) -> Iterator[int]:
    """Members of L(S, a) in lex order, generated block by block.

    Block e (e not in S, e < max S) holds the a-sets agreeing with S below e
    and containing e; the last block holds the supersets of S.
    """
    start = ground.start
    s_elems = from_mask(s_mask)
    top = s_elems[-1] if s_elems else start - 1
    prefix = 0
    count = 0
    for e in range(start, top):
        bit = 1 << e
        if s_mask & bit:
            prefix |= bit
            count += 1
            continue
        need = a - count - 1
        if need >= 0:
            for rest in ksubset_masks(range(e + 1, n + 1), need):
                yield prefix | bit | rest
    need = a - len(s_elems)
    if need >= 0:
        for rest in ksubset_masks(range(top + 1, n + 1), need):
            yield s_mask | rest


def lex_family(spec: Union[int, CharSet], a: int, ground: Optional[Ground] = None,
               n: Optional[int] = None) -> SetFamily:
    """L(m, a) for an integer m, or L(S, a) for a characteristic set S"""
    if isinstance(spec, CharSet):
        if ground is not None and ground is not spec.ground:
            raise GroundMismatchError(spec.n, spec.n)
        if n is not None and n != spec.n:
            raise GroundMismatchError(n, spec.n)
        return SetFamily.trusted(spec.n, a, iter_lex_masks(spec.mask, a, spec.ground, spec.n))

    ground = ground or Ground.FULL
    if n is None:
        raise ParameterRangeError("n", n, "ground size required for L(m, a)")
    total = binom(n - ground.start + 1, a)
    if not 0 <= spec <= total:
        raise ParameterRangeError("m", spec, f"0 <= m <= C({n - ground.start + 1},{a})={total}")
    masks = islice(ksubset_masks(ground_elements(ground, n), a), spec)
    return SetFamily.trusted(n, a, masks)


def lex_prefix_masks(m: int, a: int, ground: Ground, n: int) -> list:
    """First m a-sets of the ground in lex order, as masks"""
    return list(islice(ksubset_masks(ground_elements(ground, n), a), m))


def size_of_lex_mask(s_mask: int, a: int, ground: Ground, n: int) -> int:
    start = ground.start
    s_elems = from_mask(s_mask)
    top = s_elems[-1] if s_elems else start - 1
    total = 0
    count = 0
    for e in range(start, top):
        if s_mask >> e & 1:
            count += 1
        else:
            total += binom(n - e, a - count - 1)
    return total + binom(n - top, a - len(s_elems))


def size_of_lex(S: CharSet, a: int, ground: Optional[Ground] = None, n: Optional[int] = None) -> int:
    """|L(S, a)| in closed form"""
    if n is not None and n != S.n:
        raise GroundMismatchError(n, S.n)
    return size_of_lex_mask(S.mask, a, ground or S.ground, S.n)


def lex_segment(S: CharSet, a: int) -> LexSegment:
    return LexSegment(ground=S.ground, n=S.n, a=a, boundary=S, cached_size=size_of_lex(S, a))


def lex_rank(A: KSet, ground: Ground = Ground.FULL) -> int:
    """1-based position of A among the |A|-sets of the ground"""
    return size_of_lex_mask(A.mask, len(A), ground, A.n)


def strongly_intersect(S: CharSet, T: CharSet) -> bool:
    """S, T strongly intersect at j = min(S & T) when [start, j] is covered by S | T"""
    if S.n != T.n:
        raise GroundMismatchError(S.n, T.n)
    start = 2 if Ground.TAIL in (S.ground, T.ground) else 1
    low = (1 << start) - 1
    s = S.mask & ~low
    t = T.mask & ~low
    common = s & t
    if not common:
        return False
    j = min_element(common)
    need = interval_mask(start, j)
    return (s | t) & need == need


def complete_to_maximal(T: CharSet, a: int, b: int) -> CharSet:
    """Partner S with S & T = {j}, S | T = [j], j = max T"""
    t_elems = T.effective
    if not t_elems:
        raise ParameterRangeError("T", list(T.elements), "nonempty characteristic set")
    if len(t_elems) > b:
        raise ParameterRangeError("|T|", len(t_elems), f"|T| <= b={b}")
    j = t_elems[-1]
    t_set = set(t_elems)
    elements = [e for e in range(T.ground.start, j) if e not in t_set] + [j]
    if T.ground is Ground.TAIL:
        elements = [1] + elements
    return CharSet(elements=tuple(elements), ground=T.ground, n=T.n)


def first_disjoint_mask(other: int, a: int, elements: Sequence[int]) -> Optional[int]:
    """Lex-first a-set of `elements` avoiding `other`, or None"""
    if a == 0:
        return 0
    picked = []
    for e in elements:
        if not other >> e & 1:
            picked.append(e)
            if len(picked) == a:
                return to_mask(picked)
    return None


def cross_intersecting_lex(S: CharSet, a: int, T: CharSet, b: int) -> bool:
    """Decide whether L(S, a) and L(T, b) are cross-intersecting.

    An initial segment holds an a-set disjoint from B iff it holds the
    lex-first such set, so one membership test per member of L(T, b) suffices.
    """
    if S.n != T.n:
        raise GroundMismatchError(S.n, T.n)
    elements = list(ground_elements(S.ground, S.n))
    s_mask = S.mask
    for b_mask in iter_lex_masks(T.mask, b, T.ground, T.n):
        candidate = first_disjoint_mask(b_mask, a, elements)
        if candidate is not None and lex_le_masks(candidate, s_mask):
            return False
    return True


def _find_disjoint(left: SetFamily, right: SetFamily) -> Optional[Tuple[int, int]]:
    for x in left.masks:
        for y in right.masks:
            if not x & y:
                return x, y
    return None


def lex_compress_pair(A: SetFamily, B: SetFamily, ground: Ground = Ground.FULL) -> Tuple[SetFamily, SetFamily]:
    """Replace a cross-intersecting pair by the lex pair of the same sizes"""
    if A.n != B.n:
        raise GroundMismatchError(A.n, B.n)
    clash = _find_disjoint(A, B)
    if clash is not None:
        raise NotCrossIntersectingError(from_mask(clash[0]), from_mask(clash[1]))
    return lex_family(len(A), A.k, ground, A.n), lex_family(len(B), B.k, ground, B.n)


def shadow_lower_bound(m: int, k: int) -> int:
    """Kruskal–Katona lower bound on the shadow of m k-sets"""
    if m < 0:
        raise ParameterRangeError("m", m, "m >= 0")
    if m == 0 or k == 0:
        return 0
    return sum(binom(top, i - 1) for top, i in kk_cascade(m, k))
