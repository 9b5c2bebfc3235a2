from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equistream.axioms import GeneratorConfig, audit_swr, generate_many
from equistream.streams import Stream, dominates, swap
from equistream.swr import Relation, eventual_signs, filter_compare, lemma_k, lemma_k_paired, sign_sequence, sorted_prefix

from .conftest import ep_pairs, ep_streams
from .oracles import expand, leximin_signs

a, b, c, d, e = (Fraction(v) for v in range(5))


def test_sorted_prefix_examples():
    assert sorted_prefix(Stream.truncated([1, 0, 1]), 3) == [0, 1, 1]
    assert sorted_prefix(Stream.constant(2), 4) == [2] * 4
    assert sorted_prefix(Stream.ep([], [b, c, e]), 4) == [1, 1, 2, 4]


def test_equal_streams_are_equivalent():
    x = Stream.ep([3], [1, 4])
    v = filter_compare(x, x)
    assert v.relation is Relation.EQUIVALENT and v.exact


def test_spread_cycle_pair():
    x, y = Stream.ep([], [b, c, e]), Stream.ep([], [a, d, e])
    v = filter_compare(y, x)
    assert v.relation is Relation.STRICTLY_LESS and v.stabilization == 1
    assert all(s < 0 for s in leximin_signs(expand(y, 60), expand(x, 60)))


def test_alternating_pair():
    x, y = Stream.ep([], [1, 0]), Stream.ep([], [0, 1])
    v = filter_compare(y, x)
    assert v.relation is Relation.STRICTLY_LESS
    signs = leximin_signs(expand(y, 50), expand(x, 50))
    assert all(s < 0 for s in signs[0::2]) and all(s == 0 for s in signs[1::2])


def test_incomparable_when_signs_alternate():
    # the least value changes owner every period, so the signs keep flipping
    x = Stream.ep([], [0, 2, 1, 1])
    y = Stream.ep([], [1, 1, 0, 2])
    assert {-1, 1} <= set(leximin_signs(expand(x, 40), expand(y, 40))[20:])
    assert filter_compare(x, y).relation is Relation.INCOMPARABLE


@given(ep_pairs())
def test_signs_match_list_oracle(pair):
    x, y = pair
    assert sign_sequence(x, y, 60) == leximin_signs(expand(x, 60), expand(y, 60))


@given(ep_pairs())
def test_exact_pattern_matches_oracle(pair):
    x, y = pair
    start, threshold, pattern = eventual_signs(x, y)
    T = threshold + 3 * len(pattern)
    signs = leximin_signs(expand(x, T), expand(y, T))
    for n in range(threshold, T + 1):
        assert signs[n - 1] == pattern[(n - start) % len(pattern)]


@given(ep_pairs())
def test_verdict_is_antisymmetric(pair):
    x, y = pair
    assert filter_compare(y, x) == filter_compare(x, y).flipped()


@given(ep_pairs())
def test_stabilization_is_least(pair):
    x, y = pair
    v = filter_compare(x, y)
    if v.stabilization is None:
        return
    N = v.stabilization
    signs = leximin_signs(expand(x, N + 80), expand(y, N + 80))
    ok = {Relation.STRICTLY_LESS: (0, -1), Relation.STRICTLY_GREATER: (0, 1), Relation.EQUIVALENT: (0,)}[v.relation]
    assert all(s in ok for s in signs[N - 1:])
    if N > 1:
        assert signs[N - 2] not in ok


@given(ep_streams(), st.integers(1, 6), st.integers(1, 6))
def test_anonymity(x, i, j):
    assert filter_compare(swap(x, i, j), x).relation is Relation.EQUIVALENT


@given(ep_pairs())
def test_monotonicity(pair):
    x, y = pair
    if dominates(x, y):
        assert filter_compare(x, y).relation in (Relation.STRICTLY_GREATER, Relation.EQUIVALENT)


@given(ep_pairs(), st.integers(0, 3))
def test_truncated_detector_stable_in_depth(pair, extra):
    x, y = pair
    T = 200 + 50 * extra
    v1 = filter_compare(Stream.truncated(expand(x, 200)), Stream.truncated(expand(y, 200)), 200, 100)
    v2 = filter_compare(Stream.truncated(expand(x, T)), Stream.truncated(expand(y, T)), T, 100)
    if v1.relation is not Relation.UNDETERMINED:
        assert v2.relation is v1.relation
        assert v1.relation is filter_compare(x, y).relation


def test_bad_window():
    with pytest.raises(ValueError):
        filter_compare(Stream.constant(1), Stream.constant(1), 10, 10)


@pytest.mark.parametrize("axiom", ["GE", "AN", "M"])
def test_consistency_audits(axiom):
    cfg = GeneratorConfig(tuple(range(5)))
    assert audit_swr(filter_compare, axiom, cfg, 150, seed=3).passed


def test_corrected_k_bounds_stabilization():
    cfg = GeneratorConfig(tuple(range(5)))
    for inst in generate_many("GE", cfg, 150, seed=5):
        dom = inst.pairing.domain()
        idx = dom.upto(dom.horizon() + 1)
        v = filter_compare(inst.y, inst.x)
        assert v.relation is Relation.STRICTLY_LESS
        assert v.stabilization <= lemma_k_paired(inst.y, idx)
        assert lemma_k(inst.y, inst.x, idx) <= lemma_k_paired(inst.y, idx)
