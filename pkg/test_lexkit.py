"""
测试字典序初始段与特征集
"""
import pytest

from analysis import is_intersecting
from bits import ksubset_masks, lex_le_masks
from exceptions import GroundMismatchError, NotCrossIntersectingError, ParameterRangeError
from lexkit import (complete_to_maximal, cross_intersecting_lex, lex_compress_pair, lex_family, lex_segment,
                    lex_less_eq, lex_rank, shadow_lower_bound, size_of_lex, strongly_intersect)
from models import CharSet, Ground, KSet, SetFamily


def test_size_of_lex_examples():
    assert size_of_lex(CharSet(elements=(2, 4), n=16), 3) == 25
    assert size_of_lex(CharSet(elements=(2, 3, 4, 5), n=10), 4) == 1
    assert size_of_lex(CharSet(elements=(1, 5), n=10), 3) == 74
    assert size_of_lex(CharSet(elements=(4,), ground=Ground.FULL, n=10), 3) == 100


def test_lex_segment_caches_size():
    segment = lex_segment(CharSet(elements=(1, 5), n=10), 3)
    assert segment.cached_size == 74
    assert segment.model_dump()["cached_size"] == "74"


@pytest.mark.parametrize("elements,a", [
    ((2, 4), 3), ((3,), 2), ((2, 5, 6), 3), ((4, 7), 2), ((2, 3, 4), 4), ((5,), 3),
])
def test_lex_family_is_the_set_of_predecessors(elements, a):
    S = CharSet(elements=elements, n=7)
    expected = {m for m in ksubset_masks(range(2, 8), a) if lex_le_masks(m, S.mask)}
    family = lex_family(S, a)
    assert family.masks == expected
    assert size_of_lex(S, a) == len(expected)


def test_marker_is_ignored():
    with_marker = CharSet(elements=(1, 4), n=10)
    without = CharSet(elements=(4,), n=10)
    assert lex_family(with_marker, 3) == lex_family(without, 3)


def test_lex_family_by_count():
    family = lex_family(3, 2, Ground.FULL, 5)
    assert family.sets() == [(1, 2), (1, 3), (1, 4)]
    with pytest.raises(ParameterRangeError):
        lex_family(11, 2, Ground.FULL, 5)
    with pytest.raises(ParameterRangeError):
        lex_family(2, 2)


def test_lex_less_eq_and_rank():
    assert lex_less_eq(KSet(elements=(1, 4), n=5), KSet(elements=(2, 3), n=5))
    assert not lex_less_eq(KSet(elements=(2, 3), n=5), KSet(elements=(1, 4), n=5))
    with pytest.raises(GroundMismatchError):
        lex_less_eq(KSet(elements=(1, 4), n=5), KSet(elements=(1, 4), n=6))
    assert lex_rank(KSet(elements=(1, 2, 3), n=5)) == 1
    assert lex_rank(KSet(elements=(3, 4, 5), n=5)) == 10


def test_strongly_intersect():
    T = CharSet(elements=(2, 3, 4, 5), n=10)
    assert strongly_intersect(CharSet(elements=(1, 5), n=10), T)
    assert not strongly_intersect(CharSet(elements=(1, 6), n=10), CharSet(elements=(2, 3, 4), n=10))
    assert not strongly_intersect(CharSet(elements=(3,), n=6), CharSet(elements=(3,), n=6))
    assert strongly_intersect(CharSet(elements=(2, 4), n=6), CharSet(elements=(3, 4), n=6))


def test_complete_to_maximal():
    assert complete_to_maximal(CharSet(elements=(2, 3, 4), n=10), 3, 4).elements == (1, 4)
    assert complete_to_maximal(CharSet(elements=(2, 3, 4, 5), n=10), 3, 4).elements == (1, 5)
    assert complete_to_maximal(CharSet(elements=(2, 4, 7), n=10), 3, 4).elements == (1, 3, 5, 6, 7)
    full = complete_to_maximal(CharSet(elements=(1, 2, 3), ground=Ground.FULL, n=10), 3, 4)
    assert full.elements == (3,)
    with pytest.raises(ParameterRangeError):
        complete_to_maximal(CharSet(elements=(2, 3, 4, 5, 6), n=10), 3, 4)


@pytest.mark.parametrize("s,t,a,b", [
    ((1, 5), (2, 3, 4, 5), 3, 4),
    ((1, 4), (2, 3, 4), 3, 4),
    ((3,), (3,), 2, 2),
    ((2, 4), (3, 4), 2, 2),
    ((1, 6), (2, 3, 4), 3, 4),
])
def test_cross_intersecting_lex_matches_direct_check(s, t, a, b):
    n = 10 if a == 3 else 6
    S, T = CharSet(elements=s, n=n), CharSet(elements=t, n=n)
    direct = is_intersecting(lex_family(S, a), lex_family(T, b))
    assert cross_intersecting_lex(S, a, T, b) == direct


def test_lex_compress_pair():
    A = SetFamily.from_sets(6, 2, [(2, 3), (3, 4)])
    B = SetFamily.from_sets(6, 2, [(3, 5)])
    A2, B2 = lex_compress_pair(A, B)
    assert (len(A2), len(B2)) == (2, 1)
    assert A2.sets() == [(1, 2), (1, 3)]
    assert is_intersecting(A2, B2)
    with pytest.raises(NotCrossIntersectingError):
        lex_compress_pair(SetFamily.from_sets(6, 2, [(1, 2)]), SetFamily.from_sets(6, 2, [(3, 4)]))


def test_shadow_lower_bound():
    assert shadow_lower_bound(0, 3) == 0
    assert shadow_lower_bound(3, 2) == 3
    assert shadow_lower_bound(4, 2) == 4
    assert shadow_lower_bound(10, 3) == 10
    assert shadow_lower_bound(1, 1) == 1
    with pytest.raises(ParameterRangeError):
        shadow_lower_bound(-1, 2)
