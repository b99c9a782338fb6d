"""Cascade forms, resistant numbers and resistant pairs."""
import logging
from functools import cmp_to_key
from typing import List, Optional, Tuple

from bits import from_mask, lex_le_masks, to_mask
from core import binom, kk_cascade
from exceptions import ParameterRangeError
from lexkit import complete_to_maximal, size_of_lex
from models import CascadeForm, CharSet, Ground, PairVariant, ResistantPair

logger = logging.getLogger(__name__)


def check_uniform_range(n: int, k: int) -> None:
    if not (k >= 3 and n > 2 * k):
        raise ParameterRangeError("(n,k)", (n, k), "n > 2k >= 6")


def cascade_form(gamma: int, n: int, k: int) -> CascadeForm:
    """gamma = sum_i C(n - b_i, n - k - i), greedy and unique"""
    check_uniform_range(n, k)
    upper = binom(n - 1, n - k - 1)
    if not 1 <= gamma <= upper:
        raise ParameterRangeError("gamma", gamma, f"1 <= gamma <= C({n - 1},{n - k - 1})={upper}")
    digits = kk_cascade(gamma, n - k - 1)
    terms = tuple((n - top, lower) for top, lower in digits)
    return CascadeForm(n=n, k=k, terms=terms, value=gamma)


def derive_TS(cf: CascadeForm) -> Tuple[CharSet, CharSet]:
    """T_gamma = {b_i}; S_gamma = {b_s} together with [2, b_s] minus T_gamma"""
    bs = cf.b
    t_ground = Ground.FULL if bs[0] == 1 else Ground.TAIL
    T = CharSet(elements=bs, ground=t_ground, n=cf.n)
    j = bs[-1]
    t_set = set(bs)
    s_elems = sorted({j} | {e for e in range(2, j + 1) if e not in t_set})
    S = CharSet(elements=tuple(s_elems), ground=Ground.TAIL, n=cf.n)
    return T, S


def is_resistant_number(gamma: int, n: int, k: int) -> bool:
    check_uniform_range(n, k)
    if gamma == binom(n - 4, k - 3):
        return True
    if gamma < 1 or gamma > binom(n - 1, n - k - 1):
        return False
    cf = cascade_form(gamma, n, k)
    T, S = derive_TS(cf)
    if len(S.effective) > k or len(cf.terms) > k - 1:
        return False
    return all(b > 2 * i + 2 for i, b in enumerate(cf.b, start=1))


def resistant_sequence(n: int, k: int) -> List[int]:
    """All resistant numbers for (n, k), increasing.

    Chains b_1 < ... < b_s with b_i >= 2i + 3, b_i <= k + i and s <= k - 1,
    plus the exceptional value C(n-4, k-3).
    """
    check_uniform_range(n, k)
    values = {binom(n - 4, k - 3)}

    def walk(i: int, prev: int, gamma: int) -> None:
        if i > k - 1:
            return
        for b in range(max(prev + 1, 2 * i + 3), k + i + 1):
            value = gamma + binom(n - b, n - k - i)
            values.add(value)
            walk(i + 1, b, value)

    walk(1, 0, 0)
    return sorted(values)


def default_variant(a: int, b: int) -> PairVariant:
    return PairVariant.UNIFORM if b == a + 1 else PairVariant.GENERAL


def _pair_threshold(a: int, b: int, variant: PairVariant) -> int:
    return 4 if variant is PairVariant.UNIFORM else b - a + 2


def _exceptional(a: int, b: int, variant: PairVariant) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """Exceptional T and the accepted spellings of its partner S"""
    if variant is PairVariant.UNIFORM:
        return (2, 3, 4), ((1, 4),)
    c = b - a + 2
    return tuple(range(1, c + 1)), ((c,), (1, c))


def _balanced(in_s: int, out_s: int, a: int, b: int, variant: PairVariant) -> bool:
    if variant is PairVariant.UNIFORM:
        return in_s < out_s
    return in_s - a < out_s - b


def is_resistant_pair(S: CharSet, T: CharSet, a: int, b: int, variant: Optional[PairVariant] = None) -> bool:
    variant = variant or default_variant(a, b)
    s_set = set(S.elements)
    t_set = set(T.elements)
    if not t_set:
        return False
    exceptional_t, exceptional_s = _exceptional(a, b, variant)
    if tuple(sorted(t_set)) == exceptional_t and tuple(sorted(s_set)) in exceptional_s:
        return True

    if variant is PairVariant.UNIFORM:
        # S carries the marker 1, T lives on [2,n]
        if 1 not in s_set or 1 in t_set:
            return False
        s_cap, t_cap = b, b
    else:
        s_cap, t_cap = a, b

    j = max(t_set)
    threshold = _pair_threshold(a, b, variant)
    if j < threshold:
        return False
    if s_set & t_set != {j} or s_set | t_set != set(range(1, j + 1)):
        return False
    if len(s_set) > s_cap or len(t_set) > t_cap:
        return False
    in_s = 0
    for i in range(1, j + 1):
        if i in s_set:
            in_s += 1
        if i >= threshold and not _balanced(in_s, i - in_s, a, b, variant):
            return False
    return True


def _scan_pairs(n: int, a: int, b: int, variant: PairVariant) -> List[Tuple[int, int]]:
    """(S mask, T mask) for every non-exceptional resistant pair.

    Elements 1..j are assigned to T only or S only, j goes to both; prefixes
    violating the balance condition or the arity caps are cut.
    """
    uniform = variant is PairVariant.UNIFORM
    s_cap, t_cap = (b, b) if uniform else (a, b)
    threshold = _pair_threshold(a, b, variant)
    first = 2 if uniform else 1
    base_s = 1 if uniform else 0
    found: List[Tuple[int, int]] = []

    def grow(i: int, s_only: List[int], t_only: List[int]) -> None:
        in_s = base_s + len(s_only) + 1
        if (i >= threshold and len(t_only) + 1 <= t_cap and in_s <= s_cap
                and _balanced(in_s, len(t_only), a, b, variant)):
            s_elems = ([1] if uniform else []) + s_only + [i]
            found.append((to_mask(s_elems), to_mask(t_only + [i])))
        if i >= n:
            return
        for to_s in (False, True):
            next_s = s_only + [i] if to_s else s_only
            next_t = t_only if to_s else t_only + [i]
            count_s = base_s + len(next_s)
            if count_s + 1 > s_cap or len(next_t) + 1 > t_cap:
                continue
            if i >= threshold and not _balanced(count_s, len(next_t), a, b, variant):
                continue
            grow(i + 1, next_s, next_t)

    grow(first, [], [])
    return found


def _compare_t(left: Tuple[int, int], right: Tuple[int, int]) -> int:
    if left[1] == right[1]:
        return 0
    return -1 if lex_le_masks(left[1], right[1]) else 1


def _make_pair(index: int, s_mask: int, t_mask: int, n: int, a: int, b: int,
               variant: PairVariant, sentinel: bool = False) -> ResistantPair:
    ground = Ground.TAIL if variant is PairVariant.UNIFORM else Ground.FULL
    S = CharSet(elements=from_mask(s_mask), ground=ground, n=n)
    T = CharSet(elements=from_mask(t_mask), ground=ground, n=n)
    return ResistantPair(
        index=index, S=S, T=T, a=a, b=b, j=max(T.elements), variant=variant,
        size_a=size_of_lex(S, a), size_b=size_of_lex(T, b), sentinel=sentinel,
    )


def resistant_pair_sequence(n: int, a: int, b: int, variant: Optional[PairVariant] = None) -> List[ResistantPair]:
    """Sentinel T_0 followed by all resistant pairs, T increasing in lex order"""
    variant = variant or default_variant(a, b)
    if a < 1 or b < 1 or n <= a + b:
        raise ParameterRangeError("(n,a,b)", (n, a, b), "a, b >= 1 and n > a + b")
    if variant is PairVariant.UNIFORM and b != a + 1:
        raise ParameterRangeError("(a,b)", (a, b), "(k-1, k) for the uniform variant")

    raw = _scan_pairs(n, a, b, variant)
    exceptional_t, exceptional_s = _exceptional(a, b, variant)
    if exceptional_t and len(exceptional_t) <= b and exceptional_t[-1] <= n:
        raw.append((to_mask(exceptional_s[-1] if variant is PairVariant.UNIFORM else exceptional_s[0]),
                    to_mask(exceptional_t)))
    raw.sort(key=cmp_to_key(_compare_t))

    if variant is PairVariant.UNIFORM:
        t0 = to_mask(range(2, n + 1))
        s0 = to_mask((1, n))
    else:
        t0 = to_mask(range(1, n + 1))
        s0 = to_mask((n,))
    pairs = [_make_pair(0, s0, t0, n, a, b, variant, sentinel=True)]
    for index, (s_mask, t_mask) in enumerate(raw, start=1):
        pairs.append(_make_pair(index, s_mask, t_mask, n, a, b, variant))
    logger.debug(f"resistant pairs n={n} a={a} b={b} {variant.value}: {len(raw)}")
    return pairs


def post_resistant_sentinel(n: int, a: int, b: int, index: int,
                            variant: Optional[PairVariant] = None) -> ResistantPair:
    """T_{m+1}: {2,3} for the uniform variant, [b+1-a] for the general one"""
    variant = variant or default_variant(a, b)
    if variant is PairVariant.UNIFORM:
        T = CharSet(elements=(2, 3), ground=Ground.TAIL, n=n)
    else:
        top = b + 1 - a
        if top < 1:
            raise ParameterRangeError("b+1-a", top, ">= 1")
        T = CharSet(elements=tuple(range(1, top + 1)), ground=Ground.FULL, n=n)
    S = complete_to_maximal(T, a, b)
    return _make_pair(index, to_mask(S.elements), to_mask(T.elements), n, a, b, variant, sentinel=True)


def is_neutral(T: CharSet, T_l: CharSet, k: Optional[int] = None) -> bool:
    """T is reachable from T_l by repeatedly adjoining 2 * |current|; T is a k-side set when k is given"""
    target = set(T.effective)
    if k is not None and len(target) > k:
        raise ParameterRangeError("|T|", len(target), f"|T| <= k={k}")
    current = set(T_l.effective)
    while True:
        if current == target:
            return True
        if not current < target:
            return False
        x = 2 * len(current)
        if x in current or x not in target:
            return False
        current.add(x)
