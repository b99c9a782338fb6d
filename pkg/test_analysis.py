"""
测试族的统计量与变换
"""
import pytest

from analysis import (covering_number, decompose, degrees, find_disjoint_pair, family_stats, is_intersecting,
                      is_isomorphic, is_typical_minimal, matching_number, shadow, shift, shift_pair,
                      subset_degree)
from constructions import a_k, hilton_milner, hm_matching, majority3, star
from exceptions import GroundMismatchError, ParameterRangeError
from models import SetFamily, ShiftMode


def test_family_stats_hilton_milner():
    stats = family_stats(hilton_milner(7, 3))
    assert (stats.size, stats.max_degree, stats.diversity) == (13, 12, 1)
    assert stats.max_degree_element == 1
    assert stats.to_json_dict()["size"] == "13"


def test_disjoint_pair_detection():
    F = SetFamily.from_sets(5, 2, [(1, 2), (2, 3), (4, 5)])
    assert not is_intersecting(F)
    assert find_disjoint_pair(F) is not None
    assert is_intersecting(star(5, 2))
    with pytest.raises(GroundMismatchError):
        is_intersecting(star(5, 2), star(6, 2))


def test_degrees_and_subset_degree():
    deg = degrees(star(6, 3))
    assert deg[1] == 10 and deg[2] == 4
    assert subset_degree(star(6, 3), 1) == 4
    assert subset_degree(star(6, 3), 2) == 0
    with pytest.raises(ParameterRangeError):
        subset_degree(star(6, 3), 3)


def test_matching_and_covering_numbers():
    assert matching_number(a_k(13, 3, 2)) == 2
    assert covering_number(a_k(13, 3, 2)) == 6
    assert covering_number(hm_matching(13, 3, 2)) == 3
    assert covering_number(star(6, 3)) == 1
    stats = family_stats(hilton_milner(7, 3), t=1, deep=True)
    assert (stats.nu, stats.tau) == (1, 2)


def test_shadow():
    assert len(shadow(star(5, 2))) == 5
    assert shadow(SetFamily.from_sets(5, 3, [(1, 2, 3)])).sets() == [(1, 2), (1, 3), (2, 3)]


def test_single_shift():
    F = SetFamily.from_sets(4, 2, [(2, 3), (1, 3)])
    assert shift(F, 1, 2).sets() == [(1, 2), (1, 3)]
    with pytest.raises(ParameterRangeError):
        shift(F, 2, 2)


def test_shift_closure_of_triangle():
    triangle = SetFamily.from_sets(4, 2, [(2, 3), (2, 4), (3, 4)])
    closed = shift(triangle, mode=ShiftMode.CLOSURE)
    assert closed.sets() == [(1, 2), (1, 3), (2, 3)]
    assert shift(closed, mode="test") is True
    assert shift(triangle, mode="test") is False


def test_shift_pair_keeps_cross_intersection():
    A = SetFamily.from_sets(5, 2, [(2, 3), (3, 5)])
    B = SetFamily.from_sets(5, 3, [(2, 3, 4), (3, 4, 5)])
    A2, B2 = shift_pair(A, B)
    assert (len(A2), len(B2)) == (2, 2)
    assert is_intersecting(A2, B2)
    assert shift(A2, mode="test") and shift(B2, mode="test")


def test_decompose():
    link, rest = decompose(hilton_milner(7, 3), 1)
    assert (len(link), len(rest)) == (12, 1)
    assert link.k == 2
    assert rest.sets() == [(2, 3, 4)]


def test_is_typical_minimal():
    assert is_typical_minimal(SetFamily.from_sets(5, 3, [(1, 2, 3), (1, 2, 4), (3, 4, 5)]))
    assert not is_typical_minimal(SetFamily.from_sets(6, 3, [(1, 2, 3), (1, 4, 5), (2, 4, 6)]))
    assert not is_typical_minimal(SetFamily.from_sets(4, 2, [(1, 2), (1, 3), (1, 4)]))
    with pytest.raises(ParameterRangeError):
        is_typical_minimal(SetFamily.from_sets(4, 2, [(1, 2)]))


def test_is_isomorphic():
    assert is_isomorphic(star(6, 3), star(6, 3, center=4))
    relabel = {1: 7, 7: 1}
    moved = SetFamily.from_sets(7, 3, [tuple(sorted(relabel.get(e, e) for e in s))
                                       for s in hilton_milner(7, 3).sets()])
    assert is_isomorphic(hilton_milner(7, 3), moved)
    assert len(majority3(7, 3)) == len(hilton_milner(7, 3))
    assert not is_isomorphic(majority3(7, 3), hilton_milner(7, 3))
