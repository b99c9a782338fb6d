"""
测试二项式运算与位掩码编码
"""
import pytest
from hypothesis import given, settings, strategies as st

from bits import from_mask, interval_mask, ksubset_masks, lex_le_masks, max_element, min_element, to_mask
from core import binom, binom_real, enumerate_ksets, kk_cascade
from exceptions import ParameterRangeError


def test_binom_values():
    assert binom(5, 2) == 10
    assert binom(10, 0) == 1
    assert binom(3, 5) == 0
    assert binom(-1, 0) == 0
    assert binom(5, -1) == 0
    assert binom(100, 50) == 100891344545564193334812497256


def test_binom_real():
    assert binom_real(5.0, 2) == pytest.approx(10.0)
    assert binom_real(4.5, 2) == pytest.approx(7.875)
    assert binom_real(3.0, 0) == 1.0
    with pytest.raises(ParameterRangeError):
        binom_real(3.0, -1)


def test_enumerate_ksets_lex_order():
    sets = [s.elements for s in enumerate_ksets(4, 2)]
    assert sets == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(list(enumerate_ksets(7, 3))) == 35
    with pytest.raises(ParameterRangeError):
        list(enumerate_ksets(3, 4))


def test_kk_cascade_examples():
    assert kk_cascade(3, 2) == [(3, 2)]
    assert kk_cascade(5, 2) == [(3, 2), (2, 1)]
    assert kk_cascade(0, 3) == []
    with pytest.raises(ParameterRangeError):
        kk_cascade(-1, 2)


@given(m=st.integers(min_value=0, max_value=2000), k=st.integers(min_value=1, max_value=6))
@settings(max_examples=200)
def test_kk_cascade_reconstructs(m, k):
    digits = kk_cascade(m, k)
    assert sum(binom(top, i) for top, i in digits) == m
    tops = [top for top, _ in digits]
    assert all(x > y for x, y in zip(tops, tops[1:]))
    lowers = [i for _, i in digits]
    assert lowers == list(range(k, k - len(digits), -1))


def test_mask_encoding():
    assert to_mask((1, 3)) == 0b1010
    assert from_mask(0b1010) == (1, 3)
    assert interval_mask(2, 4) == 0b11100
    assert interval_mask(3, 2) == 0
    assert min_element(to_mask((3, 5))) == 3
    assert max_element(to_mask((3, 5))) == 5


def test_lex_order_on_masks():
    assert lex_le_masks(to_mask((1, 2)), to_mask((1, 3)))
    assert not lex_le_masks(to_mask((1, 3)), to_mask((1, 2)))
    # sets of different size: a superset comes first
    assert lex_le_masks(to_mask((2, 3, 4)), to_mask((2, 3)))
    assert lex_le_masks(to_mask((1, 3)), to_mask((2,)))


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=2, max_size=2, unique=True))
def test_ksubset_masks_follow_lex(pair):
    masks = list(ksubset_masks(range(1, 8), 3))
    assert all(lex_le_masks(x, y) for x, y in zip(masks, masks[1:]))
    mask = to_mask(pair)
    assert from_mask(mask) == tuple(sorted(pair))
