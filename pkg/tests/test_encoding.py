import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from buchi.encoding import DigitWord, digits, v_p, value, zip_pad

BASES = (2, 3, 5, 10)


def oracle_digits(n, p):
    # independent: numpy's MSB-first base_repr, reversed
    if n == 0:
        return ()
    return tuple(int(c, 36) for c in reversed(np.base_repr(n, p)))


@pytest.mark.parametrize(
    "n,p,expected",
    [(0, 2, ()), (13, 2, (1, 0, 1, 1)), (86, 5, (1, 2, 3))],
)
def test_digits_examples(n, p, expected):
    assert digits(n, p).track(0) == expected
    assert digits(n, p).track(0) == oracle_digits(n, p)


def test_value_of_worked_example():
    w = DigitWord(5, 3, ((1, 2, 3), (2, 3, 1), (3, 1, 2)))
    # per track: 1+2*5+3*25, 2+3*5+1*25, 3+1*5+2*25
    assert value(w) == (86, 42, 58)
    assert value(DigitWord(5, 3, ((1, 2, 3), (2, 3, 1), (3, 1, 1)))) == (86, 42, 33)


def test_value_small_cases():
    assert value(DigitWord(2, 1, ())) == (0,)
    assert value(digits(13, 2).padded()) == (13,)


def test_zip_pad_examples():
    assert zip_pad((1, 2), 2).letters == ((1, 0), (0, 1))
    assert zip_pad((0, 0), 3).letters == ()
    assert zip_pad((86, 42, 33), 5).letters == ((1, 2, 3), (2, 3, 1), (3, 1, 1))


@pytest.mark.parametrize("n,p,expected", [(0, 2, 0), (12, 2, 4), (86, 5, 1), (250, 5, 125), (1, 10, 1)])
def test_v_p_examples(n, p, expected):
    assert v_p(n, p) == expected


@pytest.mark.parametrize("p", BASES)
def test_digits_value_roundtrip_exhaustive(p):
    ns = range(0, 100_001, 7) if p == 2 else range(0, 100_001, 13)
    for n in ns:
        assert value(digits(n, p)) == (n,)
    for n in range(2000):
        assert digits(n, p).track(0) == oracle_digits(n, p)


@pytest.mark.parametrize("p", BASES)
def test_v_p_axiom_semantics(p):
    for n in range(10_001):
        assert v_p(p * n, p) == p * v_p(n, p)
        for i in range(1, p):
            assert v_p(p * n + i, p) == 1


@given(
    p=st.sampled_from(BASES),
    data=st.data(),
)
@settings(max_examples=200, deadline=None)
def test_random_word_roundtrip(p, data):
    k = data.draw(st.integers(1, 3))
    letters = data.draw(st.lists(st.tuples(*[st.integers(0, p - 1)] * k), max_size=10))
    w = DigitWord(p, k, tuple(letters))
    assert zip_pad(value(w), p) == w.stripped()
    assert value(w.padded(3)) == value(w)


@given(st.sampled_from(BASES), st.lists(st.integers(0, 10**9), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_zip_pad_value(p, ns):
    w = zip_pad(ns, p)
    assert value(w) == tuple(ns)
    assert not w.letters or any(w.letters[-1])


def test_validation():
    with pytest.raises(ValueError):
        digits(5, 1)
    with pytest.raises(ValueError):
        digits(-1, 2)
    with pytest.raises(ValueError):
        DigitWord(2, 2, ((0, 2),))
    with pytest.raises(ValueError):
        DigitWord(2, 2, ((0,),))
