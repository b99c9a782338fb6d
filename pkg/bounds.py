"""Exact evaluators for the extremal bounds on intersecting and cross-intersecting families."""
import logging
import math
from bisect import bisect_left
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

from cascade import check_uniform_range, resistant_pair_sequence
from core import binom, binom_real
from exceptions import ParameterRangeError
from models import BoundKind, BoundRequest, BoundResult, PairVariant, ResistantPair

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def _pairs(n: int, a: int, b: int, variant: PairVariant) -> Tuple[ResistantPair, ...]:
    return tuple(resistant_pair_sequence(n, a, b, variant))


def uniform_pairs(n: int, k: int) -> Tuple[ResistantPair, ...]:
    return _pairs(n, k - 1, k, PairVariant.UNIFORM)


def general_pairs(n: int, a: int, b: int) -> Tuple[ResistantPair, ...]:
    return _pairs(n, a, b, PairVariant.GENERAL)


def locate_window(pairs: Tuple[ResistantPair, ...], size: int) -> Optional[int]:
    """l with |L(T_{l-1})| < size <= |L(T_l)|; 0 for size 0; None past the last pair"""
    sizes = [p.size_b for p in pairs]
    l = bisect_left(sizes, size)
    return l if l < len(sizes) else None


def _describe(pair: ResistantPair) -> str:
    return (f"L(S_{pair.index},{pair.a}) + L(T_{pair.index},{pair.b}) "
            f"with S={list(pair.S.elements)}, T={list(pair.T.elements)}")


def bound_diversity(gamma: int, n: int, k: int) -> BoundResult:
    """Largest intersecting family of k-sets with diversity at least gamma"""
    check_uniform_range(n, k)
    if gamma < 1:
        raise ParameterRangeError("gamma", gamma, "gamma >= 1")
    if gamma > binom(n - 4, k - 3):
        return BoundResult(
            kind=BoundKind.DIVERSITY,
            value=binom(n - 2, k - 2) + 2 * binom(n - 3, k - 2),
            flag="above_resistant_range",
            attained_by="majority3",
            notes=f"gamma > C({n - 4},{k - 3}): fixed cap C(n-2,k-2)+2C(n-3,k-2)",
        )
    pairs = uniform_pairs(n, k)
    l = locate_window(pairs, gamma)
    pair = pairs[l]
    return BoundResult(
        kind=BoundKind.DIVERSITY, value=pair.total, window_l=l,
        attained_by=_describe(pair), notes="two-segment lex sum of the resistant pair",
    )


def weight_constant(n: int, k: int) -> Fraction:
    if k < 4:
        raise ParameterRangeError("k", k, "k >= 4 for the weight (n-k-3)/(k-3)")
    return Fraction(n - k - 3, k - 3)


def bound_weighted(delta: int, gamma: int, n: int, k: int, variant: str = "plain") -> BoundResult:
    """Cap on Delta + C*gamma with C = (n-k-3)/(k-3), compared exactly"""
    check_uniform_range(n, k)
    c = weight_constant(n, k)
    if not 0 <= gamma <= binom(n - 4, k - 3):
        raise ParameterRangeError("gamma", gamma, f"0 <= gamma <= C({n - 4},{k - 3})")
    star = binom(n - 1, k - 1)
    l = None
    if variant == "plain":
        cap = Fraction(star)
    elif variant == "nontrivial":
        cap = star - binom(n - k - 1, k - 1) + c
    elif variant == "window":
        if gamma < 1:
            raise ParameterRangeError("gamma", gamma, "gamma >= 1 for the window variant")
        pairs = uniform_pairs(n, k)
        l = locate_window(pairs, gamma)
        cap = pairs[l].size_a + c * pairs[l].size_b
    else:
        raise ParameterRangeError("variant", variant, "plain, nontrivial or window")
    lhs = delta + c * gamma
    return BoundResult(kind=BoundKind.WEIGHTED, value=cap, lhs=lhs, holds=lhs <= cap,
                       window_l=l, notes=f"C={c}")


def bound_cross(a: int, b: int, n: int, b_size: int, part: str = "eqcreasy",
                j: Optional[int] = None, weight: Optional[Fraction] = None) -> BoundResult:
    """Caps on |A| + |B| (or |A| + C|B|) for cross-intersecting A of a-sets and B of b-sets on [n]"""
    if a < 1 or b < 1 or n <= a + b:
        raise ParameterRangeError("(n,a,b)", (n, a, b), "a, b >= 1 and n > a + b")
    if b_size < 0:
        raise ParameterRangeError("B_size", b_size, ">= 0")
    upper = binom(n + a - b - 1, a - 1)
    full = binom(n, a)

    if part == "eqcreasy":
        if b_size > upper:
            raise ParameterRangeError("B_size", b_size, f"<= C({n + a - b - 1},{a - 1})={upper}")
        return BoundResult(kind=BoundKind.CROSS, value=full, flag="strict" if b_size else "tight",
                           attained_by="(all a-sets, empty)" if not b_size else None,
                           notes="|A|+|B| <= C(n,a), strict unless B is empty")

    if part == "eqcreasy2":
        if j is None or not max(0, b - a + 1) <= j <= b:
            raise ParameterRangeError("j", j, f"{max(0, b - a + 1)} <= j <= {b}")
        low = binom(n - j, b - j)
        if not low <= b_size <= upper:
            raise ParameterRangeError("B_size", b_size, f"{low} <= B_size <= {upper}")
        value = full - binom(n - j, a) + low
        start = b - a + 1
        attained_by = f"B = b-sets containing [{j}]" if b_size == low else None
        if b_size == upper and b_size > low and start >= 0:
            # upper = C(n-start, b-start): the lex B is every b-set containing [start]
            if value == full - binom(n - start, a) + binom(n - start, b - start):
                attained_by = f"B = b-sets containing [{start}]" if start else "B = every b-set"
        return BoundResult(kind=BoundKind.CROSS, value=value, flag="strict" if attained_by is None else "tight",
                           attained_by=attained_by, notes=f"C(n,a) - C(n-j,a) + C(n-j,b-j), j={j}")

    if part == "post":
        t = a - b - 1
        low, high = binom(n + t - 1, a - 2), binom(n + t, a - 1)
        if not low < b_size < high:
            raise ParameterRangeError("B_size", b_size, f"{low} < B_size < {high}")
        value = full - binom(n + t - 1, a) + binom(n + t - 1, a - 2)
        return BoundResult(kind=BoundKind.CROSS, value=value, flag="strict",
                           notes=f"t = a-b-1 = {t}")

    if part in ("window", "weighted"):
        pairs = general_pairs(n, a, b)
        l = locate_window(pairs, b_size)
        if l is None:
            raise ParameterRangeError("B_size", b_size,
                                      f"<= |L(T_m,{b})| = {pairs[-1].size_b} (window membership)")
        pair = pairs[l]
        if part == "window":
            return BoundResult(kind=BoundKind.CROSS, value=pair.total, window_l=l,
                               attained_by=_describe(pair), notes="(a,b)-resistant window")
        if a <= 2:
            raise ParameterRangeError("a", a, "a > 2 for the weighted window")
        limit = Fraction(n - b - 2, a - 2)
        c = Fraction(weight) if weight is not None else None
        if c is None or not c < limit:
            raise ParameterRangeError("weight", weight, f"C < {limit}")
        return BoundResult(kind=BoundKind.CROSS, value=pair.size_a + c * pair.size_b, window_l=l,
                           attained_by=_describe(pair), notes=f"weighted window, C={c}")

    raise ParameterRangeError("part", part, "eqcreasy, eqcreasy2, window, weighted or post")


def bound_ft(n: int, a: int, b: int, alpha: float) -> BoundResult:
    """C(n,b) + C(n-alpha, n-a) - C(n-alpha, b) for cross-intersecting a- and b-set families"""
    if n <= a + b or a > b or alpha < 1:
        raise ParameterRangeError("(n,a,b,alpha)", (n, a, b, alpha), "n > a+b, a <= b, alpha >= 1")
    if float(alpha).is_integer():
        m = n - int(alpha)
        value = float(binom(n, b) + binom(m, n - a) - binom(m, b))
    else:
        value = binom(n, b) + binom_real(n - alpha, n - a) - binom_real(n - alpha, b)
    return BoundResult(kind=BoundKind.FT, value=value, exact=False, notes=f"alpha={alpha}")


def matching_u(n: int, k: int, s: int) -> int:
    """u with n = (u+s-1)(k-1)+s+k"""
    rest = n - s - k
    if k < 2 or rest % (k - 1):
        raise ParameterRangeError("n", n, f"n = (u+s-1)(k-1)+s+k for some integer u (k={k}, s={s})")
    return rest // (k - 1) - s + 1


def family_size_formula(kind: str, n: int, k: int, **params: Any) -> int:
    """Closed-form sizes of the named families"""
    if kind == "star":
        return binom(n - 1, k - 1)
    if kind == "hm":
        return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1
    if kind == "h_u":
        u = params["u"]
        if not 3 <= u <= k:
            raise ParameterRangeError("u", u, f"3 <= u <= k={k}")
        return binom(n - 1, k - 1) + binom(n - u - 1, n - k - 1) - binom(n - u - 1, k - 1)
    if kind == "j_i":
        i = params["i"]
        if not 2 <= i <= k:
            raise ParameterRangeError("i", i, f"2 <= i <= k={k}")
        # |A & B| = k - i + 1 for the two non-star sets
        return binom(n - 1, k - 1) - 2 * binom(n - k - 1, k - 1) + binom(n - k - i, k - 1) + 2
    if kind == "majority3":
        return binom(n - 2, k - 2) + 2 * binom(n - 3, k - 2)
    if kind == "hk_rhs":
        return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) - binom(n - k - 2, k - 2) + 2
    if kind == "em_stability":
        s = params["s"]
        u = params.get("u") or matching_u(n, k, s)
        if u < s + 1:
            raise ParameterRangeError("u", u, f"u >= s+1={s + 1}")
        exact = binom(n, k) - binom(n - s, k) - Fraction(u - s - 1, u) * binom(n - s - k, k - 1)
        return math.floor(exact)
    if kind == "a0":
        s = params["s"]
        return binom(n, k) - binom(n - s, k)
    if kind == "a_k":
        s = params["s"]
        return binom(k * (s + 1) - 1, k)
    if kind == "hm_matching":
        s = params["s"]
        rest = n - s + 1
        return (binom(n, k) - binom(rest, k)
                + binom(rest - 1, k - 1) - binom(rest - k - 1, k - 1) + 1)
    raise ParameterRangeError("kind", kind, "a known family kind")


def _check_t(k: int, t: int) -> None:
    if not 1 <= t < k:
        raise ParameterRangeError("t", t, f"1 <= t < k={k}")


def thresholds(k: int, t: int = 1, s: int = 1) -> Dict[str, Optional[int]]:
    """Least n accepted by each degree theorem's hypothesis (None: never)"""
    _check_t(k, t)
    if t == 1:
        thm01 = 2 * k + 2
    else:
        thm01 = math.ceil(2 * k + Fraction(3 * t * k, k - t))
    if t == 1:
        thm02 = 2 * k + 5 if k >= 35 else None
    elif Fraction(k, 4) - 2 >= t:
        thm02 = 2 * k + 14 * t
    else:
        thm02 = None
    deg_ekr = 2 * k * k if (k >= 3 * s if t == 1 else k >= 5 * s * t) else None
    return {"thmhz": 2 * k + 1, "thm01": thm01, "thm02": thm02, "degEKR": deg_ekr}


def degree_bound(kind: str, n: int, k: int, **params: Any) -> BoundResult:
    """Degree-version bounds: targets, averaging bound, the stability implication, A_0 degrees"""
    t = params.get("t", 1)
    if kind == "ekr_deg":
        _check_t(k, t)
        return BoundResult(kind=BoundKind.DEGREE, value=binom(n - t - 1, k - t - 1),
                           attained_by="star", notes="delta_t <= C(n-t-1,k-t-1)")
    if kind == "hm_deg":
        _check_t(k, t)
        value = binom(n - t - 1, k - t - 1) - binom(n - t - k - 1, k - t - 1)
        return BoundResult(kind=BoundKind.DEGREE, value=value, notes="non-trivial target")
    if kind == "avg":
        _check_t(k, t)
        delta, gamma = params["delta"], params["gamma"]
        value = Fraction(gamma * binom(k, t) + delta * binom(k - 1, t), binom(n - 1, t))
        return BoundResult(kind=BoundKind.DEGREE, value=value, notes="average t-degree over [n] minus the centre")
    if kind == "stat1_check":
        _check_t(k, t)
        delta, gamma = params["delta"], params["gamma"]
        lhs = delta + Fraction(k, k - t) * gamma
        holds = lhs <= binom(n - 1, k - 1)
        return BoundResult(kind=BoundKind.DEGREE, value=binom(n - t - 1, k - t - 1), lhs=lhs, holds=holds,
                           notes="if holds then delta_t <= value")
    if kind == "a0_delta":
        _check_t(k, t)
        s = params["s"]
        value = binom(n - t, k - t) - binom(n - s - t, k - t)
        return BoundResult(kind=BoundKind.DEGREE, value=value, attained_by=f"a0(n={n},k={k},s={s})")
    if kind == "thresholds":
        _check_t(k, t)
        return BoundResult(kind=BoundKind.DEGREE, value=thresholds(k, t, params.get("s", 1)))
    if kind == "thm02_window":
        _check_t(k, t)
        return BoundResult(kind=BoundKind.DEGREE,
                           value={"low": binom(n - k + t + 1, t + 2), "high": binom(n - 4, k - 3)},
                           notes="boundary strictness left open")
    raise ParameterRangeError("kind", kind, "ekr_deg, hm_deg, avg, stat1_check, a0_delta, thresholds, thm02_window")


def evaluate_bound(request: BoundRequest) -> BoundResult:
    """Answer a bound query; size and degree queries name their formula in `variant`"""
    p = request.params
    kind = request.kind

    def need(*names: str) -> None:
        for name in names:
            if p.get(name) is None:
                raise ParameterRangeError(name, None, f"required for {kind.value} bounds")

    if kind is BoundKind.DIVERSITY:
        need("n", "k", "gamma")
        return bound_diversity(p["gamma"], p["n"], p["k"])
    if kind is BoundKind.WEIGHTED:
        need("n", "k", "gamma", "delta")
        return bound_weighted(p["delta"], p["gamma"], p["n"], p["k"], request.variant or "plain")
    if kind is BoundKind.CROSS:
        need("n", "a", "b", "b_size")
        return bound_cross(p["a"], p["b"], p["n"], p["b_size"], part=request.variant or "eqcreasy",
                           j=p.get("j"), weight=p.get("weight"))
    if kind is BoundKind.FT:
        need("n", "a", "b", "alpha")
        return bound_ft(p["n"], p["a"], p["b"], p["alpha"])

    need("n", "k")
    if request.variant is None:
        raise ParameterRangeError("variant", None, f"a formula name for {kind.value} bounds")
    if kind is BoundKind.SIZE:
        extra = {name: p[name] for name in ("u", "i", "s") if p.get(name) is not None}
        value = family_size_formula(request.variant, p["n"], p["k"], **extra)
        return BoundResult(kind=kind, value=value, attained_by=request.variant)
    extra = {name: p[name] for name in ("t", "s", "delta", "gamma") if p.get(name) is not None}
    return degree_bound(request.variant, p["n"], p["k"], **extra)


# calculation identities, exact over the rationals

def identity_majority(n: int, k: int) -> Tuple[Fraction, Fraction]:
    lhs = Fraction(binom(n - 2, k - 2) + 2 * binom(n - 3, k - 2))
    rhs = Fraction(k * (k - 1) * (3 * n - 2 * k - 2), n * (n - 1) * (n - 2)) * binom(n, k)
    return lhs, rhs


def identity_star_ratio(n: int, k: int, t: int) -> Tuple[Fraction, Fraction]:
    lhs = Fraction(binom(n - t - 1, k - t - 1) * binom(n, t), binom(k, t))
    rhs = Fraction(k - t, n - t) * binom(n, k)
    return lhs, rhs


def identity_product(n: int, k: int, t: int) -> Tuple[Fraction, Fraction]:
    lhs = Fraction(binom(n - t - k - 1, k - t - 1), binom(n - t - 1, k - t - 1))
    rhs = Fraction(1)
    for i in range(1, k + 1):
        rhs *= Fraction(n - k + 1 - i, n - t - i)
    return lhs, rhs


def ratio_bound(n: int, k: int, u: int) -> Tuple[Fraction, Fraction]:
    """C(n-u-1,n-k-1)/C(n-u-1,k-1) and its value at u=3, the maximum over u >= 3"""
    ratio = Fraction(binom(n - u - 1, n - k - 1), binom(n - u - 1, k - 1))
    cap = Fraction((k - 1) * (k - 2), (n - k - 1) * (n - k - 2))
    return ratio, cap
