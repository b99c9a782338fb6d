"""Builders for the named extremal families."""
import logging
from typing import Callable, Dict, Iterator, Optional

from bits import from_mask, interval_mask, ksubset_masks
from core import binom
from exceptions import NotIntersectingError, NotStronglyIntersectingError, ParameterRangeError
from lexkit import iter_lex_masks, lex_prefix_masks, strongly_intersect
from models import CharSet, ConstructionKind, ConstructionSpec, Ground, SetFamily

logger = logging.getLogger(__name__)


def _all_masks(n: int, k: int) -> Iterator[int]:
    return ksubset_masks(range(1, n + 1), k)


def _require(name: str, value: Optional[int], lo: int, hi: int) -> int:
    if value is None or not lo <= value <= hi:
        raise ParameterRangeError(name, value, f"{lo} <= {name} <= {hi}")
    return value


def star(n: int, k: int, center: int = 1) -> SetFamily:
    _require("center", center, 1, n)
    bit = 1 << center
    return SetFamily.trusted(n, k, (m for m in _all_masks(n, k) if m & bit))


def hilton_milner(n: int, k: int) -> SetFamily:
    """Sets through 1 meeting [2,k+1], plus [2,k+1] itself"""
    if n < 2 * k or k < 2:
        raise ParameterRangeError("(n,k)", (n, k), "k >= 2 and n >= 2k")
    base = interval_mask(2, k + 1)
    masks = [m for m in _all_masks(n, k) if m & 2 and m & base]
    masks.append(base)
    return SetFamily.trusted(n, k, masks)


def h_u(n: int, k: int, u: int) -> SetFamily:
    """Sets through 1 meeting [2,u+1], plus the sets avoiding 1 that contain [2,u+1]"""
    _require("u", u, 3, k)
    if n <= 2 * k:
        raise ParameterRangeError("n", n, f"n > 2k={2 * k}")
    base = interval_mask(2, u + 1)
    masks = [m for m in _all_masks(n, k)
             if (m & 2 and m & base) or (not m & 2 and m & base == base)]
    return SetFamily.trusted(n, k, masks)


def j_family(n: int, k: int, i: int) -> SetFamily:
    """A = [2,k+1] and B with |A & B| = k-i+1, plus every set through 1 meeting both"""
    _require("i", i, 1, k)
    if n < k + i:
        raise ParameterRangeError("n", n, f"n >= k+i={k + i}")
    a = interval_mask(2, k + 1)
    b = interval_mask(2, k - i + 2) | interval_mask(k + 2, k + i)
    masks = {m for m in _all_masks(n, k) if m & 2 and m & a and m & b}
    masks.update((a, b))
    return SetFamily.trusted(n, k, masks)


def a0(n: int, k: int, s: int) -> SetFamily:
    """Sets meeting [s]"""
    if s < 1 or n < k * (s + 1):
        raise ParameterRangeError("(n,s)", (n, s), f"s >= 1 and n >= k(s+1) with k={k}")
    head = interval_mask(1, s)
    return SetFamily.trusted(n, k, (m for m in _all_masks(n, k) if m & head))


def a_k(n: int, k: int, s: int) -> SetFamily:
    """All k-sets of [k(s+1)-1]"""
    if s < 1 or n < k * (s + 1):
        raise ParameterRangeError("(n,s)", (n, s), f"s >= 1 and n >= k(s+1) with k={k}")
    return SetFamily.trusted(n, k, _all_masks(k * (s + 1) - 1, k))


def majority3(n: int, k: int) -> SetFamily:
    """Sets holding at least two of 1, 2, 3"""
    if k < 2 or n < 3:
        raise ParameterRangeError("(n,k)", (n, k), "k >= 2 and n >= 3")
    head = interval_mask(1, 3)
    return SetFamily.trusted(n, k, (m for m in _all_masks(n, k) if (m & head).bit_count() >= 2))


def hm_matching(n: int, k: int, s: int) -> SetFamily:
    """Sets meeting [s-1], plus the Hilton-Milner family of [s,n] centred at s"""
    if s < 1 or n < k * (s + 1):
        raise ParameterRangeError("(n,s)", (n, s), f"s >= 1 and n >= k(s+1) with k={k}")
    head = interval_mask(1, s - 1)
    base = interval_mask(s + 1, s + k)
    centre = 1 << s
    masks = [m for m in _all_masks(n, k)
             if m & head or (m & centre and m & base) or m == base]
    return SetFamily.trusted(n, k, masks)


def from_pair(S: CharSet, T: CharSet, k: int) -> SetFamily:
    """{1} + L(S, k-1) together with L(T, k), both lex families on [2,n]"""
    if S.ground is not Ground.TAIL or T.ground is not Ground.TAIL:
        raise ParameterRangeError("ground", (S.ground.value, T.ground.value), "characteristic sets on [2,n]")
    if not strongly_intersect(S, T):
        raise NotStronglyIntersectingError(S.elements, T.elements)
    star_part = (m | 2 for m in iter_lex_masks(S.mask, k - 1, Ground.TAIL, S.n))
    masks = set(star_part)
    masks.update(iter_lex_masks(T.mask, k, Ground.TAIL, T.n))
    return SetFamily.trusted(S.n, k, masks)


def max_family_with_B(G: SetFamily, center: int = 1) -> SetFamily:
    """Unique maximal intersecting family whose part avoiding `center` is G"""
    n, k = G.n, G.k
    _require("center", center, 1, n)
    bit = 1 << center
    members = G.sorted_masks()
    for index, x in enumerate(members):
        if x & bit:
            raise ParameterRangeError("G", list(from_mask(x)), f"members avoiding {center}")
        for y in members[index + 1:]:
            if not x & y:
                raise NotIntersectingError(from_mask(x), from_mask(y))
    rest = [e for e in range(1, n + 1) if e != center]
    masks = set(members)
    for link in ksubset_masks(rest, k - 1):
        if all(link & g for g in members):
            masks.add(link | bit)
    logger.debug(f"max family with |G|={len(members)} on n={n}: {len(masks)} sets")
    return SetFamily.trusted(n, k, masks)


def f_l(n: int, k: int, l: int) -> SetFamily:
    """Maximal intersecting family whose part avoiding 1 is L(l, k) on [2,n]"""
    _require("l", l, 0, binom(n - 1, k))
    G = SetFamily.trusted(n, k, lex_prefix_masks(l, k, Ground.TAIL, n))
    return max_family_with_B(G)


def _from_spec_pair(spec: ConstructionSpec) -> SetFamily:
    if spec.S is None or spec.T is None:
        raise ParameterRangeError("S,T", None, "both characteristic sets")
    return from_pair(spec.S, spec.T, spec.k)


def _from_spec_b(spec: ConstructionSpec) -> SetFamily:
    if spec.G is None:
        raise ParameterRangeError("G", None, "a family of k-sets")
    return max_family_with_B(spec.G, spec.center)


BUILDERS: Dict[ConstructionKind, Callable[[ConstructionSpec], SetFamily]] = {
    ConstructionKind.STAR: lambda spec: star(spec.n, spec.k, spec.center),
    ConstructionKind.HM: lambda spec: hilton_milner(spec.n, spec.k),
    ConstructionKind.H_U: lambda spec: h_u(spec.n, spec.k, spec.u),
    ConstructionKind.J_I: lambda spec: j_family(spec.n, spec.k, spec.i),
    ConstructionKind.F_L: lambda spec: f_l(spec.n, spec.k, spec.l),
    ConstructionKind.A0: lambda spec: a0(spec.n, spec.k, spec.s),
    ConstructionKind.A_K: lambda spec: a_k(spec.n, spec.k, spec.s),
    ConstructionKind.MAJORITY3: lambda spec: majority3(spec.n, spec.k),
    ConstructionKind.FROM_PAIR: _from_spec_pair,
    ConstructionKind.FROM_B: _from_spec_b,
    ConstructionKind.HM_MATCHING: lambda spec: hm_matching(spec.n, spec.k, spec.s),
}


def build_family(spec: ConstructionSpec) -> SetFamily:
    if spec.kind in (ConstructionKind.H_U, ConstructionKind.J_I, ConstructionKind.F_L,
                     ConstructionKind.A0, ConstructionKind.A_K, ConstructionKind.HM_MATCHING):
        needed = {"h_u": "u", "j_i": "i", "f_l": "l"}.get(spec.kind.value, "s")
        if getattr(spec, needed) is None:
            raise ParameterRangeError(needed, None, f"required for {spec.kind.value}")
    family = BUILDERS[spec.kind](spec)
    logger.info(f"built {spec.kind.value} n={spec.n} k={spec.k}: {len(family)} sets")
    return family
