from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equistream.errors import DepthMismatch, DescriptorError, MissingValue, NotMonotone, NotPeriodic, OutOfDepth
from equistream.streams import (
    PeriodicIndexSet,
    Stream,
    align,
    coordinate,
    difference_set,
    dominates,
    format_rational,
    is_finite_permutation,
    map_stream,
    rational,
    stream_from_json,
    stream_to_json,
    swap,
)

from .conftest import ep_pairs, ep_streams
from .oracles import expand


def test_coordinate_examples():
    assert coordinate(Stream.ep([], [1, 0]), 3) == 1
    assert coordinate(Stream.ep([5], [2]), 1) == 5
    with pytest.raises(OutOfDepth):
        coordinate(Stream.truncated([1, 2, 3, 4]), 5)


def test_rational_refuses_floats():
    with pytest.raises(TypeError):
        rational(0.5)
    assert rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 6)) == "-2/3"


def test_align_lengths():
    a, b = align(Stream.ep([7], [1, 0]), Stream.ep([1, 2, 3], [2, 3, 4]))
    assert (len(a.pre), len(a.per)) == (3, 6) == (len(b.pre), len(b.per))


def test_align_needs_periodic():
    with pytest.raises(NotPeriodic):
        align(Stream.ep([], [1]), Stream.truncated([1]))


@given(ep_pairs())
def test_align_preserves_coordinates(pair):
    x, y = pair
    a, b = align(x, y)
    assert expand(a, 40) == expand(x, 40)
    assert expand(b, 40) == expand(y, 40)


def test_difference_set_examples():
    x, y = Stream.ep([], [1, 0]), Stream.ep([], [0, 1])
    assert difference_set(x, x).is_empty()
    d = difference_set(x, y)
    assert all(t in d for t in range(1, 30))
    b, c, e, a, dd = 1, 2, 4, 0, 3
    d3 = difference_set(Stream.ep([], [b, c, e]), Stream.ep([], [a, dd, e]))
    assert d3.upto(9) == [1, 2, 4, 5, 7, 8]


@given(ep_pairs())
def test_difference_set_matches_expansion(pair):
    x, y = pair
    d = difference_set(x, y)
    xs, ys = expand(x, 60), expand(y, 60)
    assert d.upto(60) == [t for t in range(1, 61) if xs[t - 1] != ys[t - 1]]
    assert d.same_members(difference_set(y, x))


def test_truncated_depth_mismatch():
    with pytest.raises(DepthMismatch):
        difference_set(Stream.truncated([1, 2]), Stream.truncated([1]))


@given(ep_streams(), st.integers(1, 8), st.integers(1, 8))
def test_swap_is_finite_permutation(x, i, j):
    assert is_finite_permutation(x, swap(x, i, j))


def test_permutation_needs_finite_difference():
    assert not is_finite_permutation(Stream.ep([], [1, 0]), Stream.ep([], [0, 1]))


def test_dominates_examples():
    y = Stream.truncated([-3, -4, -7, -8])
    yp = Stream.truncated([-1, -4, -7, -8])
    assert dominates(yp, y) and not dominates(y, yp)
    x1, x2 = Stream.ep([], [1, 0]), Stream.ep([], [0, 1])
    assert not dominates(x1, x2) and not dominates(x2, x1)


@given(ep_streams(), ep_streams(), ep_streams())
def test_dominates_transitive(x, y, z):
    if dominates(x, y) and dominates(y, z):
        assert dominates(x, z)
    assert dominates(x, x)


def test_map_stream_checks():
    x = Stream.ep([], [0, 1])
    with pytest.raises(NotMonotone):
        map_stream({0: 1, 1: 1}, x)
    with pytest.raises(MissingValue):
        map_stream({0: 1}, x)
    assert map_stream({0: 0, 1: 1}, x) == x


@given(ep_pairs())
def test_map_stream_order(pair):
    x, y = pair
    inc = {v: 3 * v + 1 for v in range(5)}
    dec = {v: -v for v in range(5)}
    assert dominates(x, y) == dominates(map_stream(inc, x), map_stream(inc, y))
    assert dominates(x, y) == dominates(map_stream(dec, y), map_stream(dec, x))


@given(ep_streams())
def test_json_round_trip(x):
    assert stream_from_json(stream_to_json(x)) == x


def test_json_errors_name_the_path():
    with pytest.raises(DescriptorError, match=r"values\[1\]"):
        stream_from_json({"kind": "trunc", "values": ["1", 0.5]})
    with pytest.raises(DescriptorError, match="kind"):
        stream_from_json({"kind": "weird"})


def test_index_set_membership():
    S = PeriodicIndexSet(frozenset({2}), frozenset({1}), 3, 2)
    assert [t for t in range(1, 10) if t in S] == [2, 5, 7, 9]
    assert not S.is_finite()
