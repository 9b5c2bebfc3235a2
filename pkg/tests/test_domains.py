from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equistream.domains import (
    Direction,
    OrderType,
    UtilityDomain,
    chain,
    classify,
    contains_sigma_subset,
    domain_from_json,
    reference_domains,
    is_well_ordered,
)
from equistream.errors import DescriptorError


def test_finite_is_well_ordered():
    Y = UtilityDomain.of(0, 1, 2, 3, 4)
    c = classify(Y)
    assert c.order_type is OrderType.WELL_ORDERED
    assert (c.minimum, c.maximum) == (0, 4)
    assert not contains_sigma_subset(Y)


@pytest.mark.parametrize(
    "name, kind",
    [
        ("Y", OrderType.SIGMA_SUBSET),
        ("Y_prime", OrderType.SIGMA_SUBSET),
        ("Y_bold", OrderType.OMEGA_STAR_NO_SIGMA),
        ("negative_integers", OrderType.OMEGA_STAR),
    ],
)
def test_reference_fixtures(name, kind):
    assert classify(reference_domains()[name]).order_type is kind


def test_bold_y_endpoints():
    c = classify(reference_domains()["Y_bold"])
    assert (c.minimum, c.maximum) == (0, 1)


def test_descending_witness_descends():
    for Y in reference_domains().values():
        report = is_well_ordered(Y)
        assert not report
        terms = report.witness_terms(50)
        assert all(a > b for a, b in zip(terms, terms[1:]))
        assert all(t in Y for t in terms)


def test_chain_parsing():
    c = chain("(2*n+1)/(n+3)")
    assert c.direction is Direction.INCREASING and c.limit == 2
    assert c.term(1) == Fraction(3, 4)
    with pytest.raises(DescriptorError):
        chain("3")


def test_descriptor_checks_declared_limit():
    good = {"finite": [], "chains": [{"dir": "dec", "form": "1/(n+2)", "limit": "0"}]}
    assert not domain_from_json(good).is_finite
    bad = {"finite": [], "chains": [{"dir": "inc", "form": "1/(n+2)"}]}
    with pytest.raises(DescriptorError, match=r"chains\[0\]\.dir"):
        domain_from_json(bad)


@given(
    st.fractions(min_value=Fraction(1, 10), max_value=10),
    st.fractions(min_value=-10, max_value=10),
    st.sampled_from(sorted(reference_domains())),
)
def test_classification_invariant_under_increasing_maps(slope, shift, name):
    Y = reference_domains()[name]
    assert classify(Y.mapped(slope, shift)).order_type is classify(Y).order_type


def test_decreasing_map_flips_well_order():
    N = UtilityDomain((), (chain("n"),))
    assert classify(N).order_type is OrderType.WELL_ORDERED
    assert classify(N.mapped(Fraction(-1), Fraction(0))).order_type is OrderType.OMEGA_STAR
