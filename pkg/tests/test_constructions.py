from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equistream.constructions import (
    ClassPairing,
    EXAMPLES,
    decreasing_sequence,
    enumerate_rationals,
    example_streams,
    factorial_blocks,
    partition,
    rational_index,
    rationals,
    thm1_family,
    thm1_swap,
    thm2_family,
    thm3_family,
    verify_example,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from equistream.errors import BadParameter, DepthTooSmall, UnknownName
from equistream.streams import Stream, is_finite_permutation

from .oracles import nested

F = Fraction


def farey_oracle(count):
    out, d = [], 2
    while len(out) < count:
        out += sorted({F(n, d) for n in range(1, d)} - set(out))
        d += 1
    return out[:count]


def test_first_rationals():
    assert rationals(5) == (F(1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4))
    assert enumerate_rationals(6) == F(1, 5)
    with pytest.raises(BadParameter):
        enumerate_rationals(0)


def test_enumeration_matches_set_oracle():
    assert list(rationals(3000)) == farey_oracle(3000)


@given(st.integers(1, 2000))
def test_rational_index_inverts(k):
    assert rational_index(enumerate_rationals(k)) == k


def test_partition_half():
    p = partition(F(1, 2), 40)
    assert sorted(p.L)[:4] == [2, 4, 6, 7]
    assert p.L | p.U == set(range(1, 41)) and not p.L & p.U


@given(st.integers(1, 60), st.integers(1, 3000))
def test_partition_is_disjoint_cover(k, T):
    p = partition(enumerate_rationals(k), T)
    assert p.bold_I | p.bold_L | p.bold_U == set(range(1, T + 1))
    assert not (p.bold_I & p.bold_L or p.bold_I & p.bold_U or p.bold_L & p.bold_U)
    assert p.bold_I == partition(F(1, 7), T).bold_I


def test_factorial_blocks():
    assert factorial_blocks(300) == [(n, 2 * factorial(n) + 1, 2 * factorial(n) + 2) for n in range(1, 6)]


@given(st.integers(1, 80))
def test_decreasing_sequence_descends_to_r(k):
    r = enumerate_rationals(k)
    seq = decreasing_sequence(r, 4000)
    qs = [enumerate_rationals(n) for n in seq]
    assert all(q > r for q in qs)
    assert all(p > q for p, q in zip(qs, qs[1:]))
    assert qs[-1] - r < F(1, 20)


def test_thm1_family_layout():
    fam = thm1_family(F(1, 2), 40)
    L = partition(F(1, 2), 20).L
    for n in range(1, 21):
        want = (1, 2) if n in L else (0, 3)
        assert (fam.x[2 * n - 1], fam.x[2 * n]) == want
        if n in fam.n_seq:
            assert (fam.y[2 * n - 1], fam.y[2 * n]) == (1, 2)


def test_thm1_pairs_nest_independently():
    fam = thm1_family(F(1, 3), 2000)
    for i, j in fam.alpha.pairs:
        assert nested(fam.y[i], fam.y[j], fam.x[i], fam.x[j])


@pytest.mark.parametrize("r, s", [(F(1, 3), F(1, 2)), (F(1, 4), F(3, 4)), (F(2, 5), F(3, 7))])
def test_thm1_chain(r, s):
    tr = verify_thm1(r, s, 3000)
    assert tr.verified, tr.to_json()
    fr = thm1_family(r, 3000)
    assert is_finite_permutation(fr.y, thm1_swap(fr, s).y_prime)


def test_thm1_depth_too_small():
    with pytest.raises(DepthTooSmall):
        verify_thm1(F(1, 3), F(1, 2), 8)
    with pytest.raises(BadParameter):
        thm1_family(F(1, 2), 7)


@pytest.mark.parametrize("r, s", [(F(1, 3), F(2, 3)), (F(1, 4), F(1, 2)), (F(1, 5), F(1, 3))])
def test_thm2_and_thm3_chains(r, s):
    assert verify_thm2(r, s, 1500).verified
    assert verify_thm3(r, s, 1500).verified


def test_factorial_family_layout():
    fam = thm3_family(F(1, 3), 300)
    for n, i, j in factorial_blocks(300):
        if enumerate_rationals(n) < F(1, 3):
            assert (fam.x[i], fam.x[j]) == (1, 6)
        else:
            assert (fam.x[i], fam.x[j]) == (0, 7)
    assert {fam.y[t] for t in fam.part.bold_I} == {3, 4}
    assert thm2_family(F(1, 3), 300).y.pre == tuple(
        fam.y[t] if t in fam.part.bold_I else thm2_family(F(1, 3), 300).x[t] for t in range(1, 301)
    )


def test_factorial_needs_a_block_between_r_and_s():
    # q_1..q_4 fit in depth 60; none lies in [3/5, 2/3)
    with pytest.raises(DepthTooSmall):
        verify_thm2(F(3, 5), F(2, 3), 60)


def test_class_pairing_symbolic_check():
    worse = Stream.truncated([0, 3, 0, 3])
    better = Stream.truncated([1, 2, 1, 2])
    cp = ClassPairing((1, 3), (2, 4))
    assert cp.symbolic_check(worse, better)[0]
    assert not ClassPairing((1, 2), (3, 4)).symbolic_check(worse, better)[0]
    assert ClassPairing((1, 3, 5), (2,)).open_indices() == [3, 5]


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_named_examples(name):
    tr = verify_example(name, 400)
    assert tr.verified, tr.to_json()
    assert ("relation inconsistent on this domain" in tr.flags) == (name in ("ex1", "ex2"))


def test_unknown_example():
    with pytest.raises(UnknownName):
        example_streams("ex9")
