from fractions import Fraction

import pytest
from hypothesis import given

from equistream.axioms import (
    AxiomTag,
    GeneratorConfig,
    audit_swf,
    generate_many,
    implication_failures,
    premise_holds,
)
from equistream.errors import GeneratorError
from equistream.pairing import validate
from equistream.streams import Stream, dominates, is_finite_permutation, swap
from equistream.swf import w_min, w_prop1

from .conftest import ep_streams

FIVE = GeneratorConfig(tuple(range(5)), depth=120)


def test_parse_and_strictness():
    assert AxiomTag.parse("ge") is AxiomTag.GE
    assert not AxiomTag.M.strict and AxiomTag.WE.strict
    assert AxiomTag.WE in AxiomTag.GE.implies()
    with pytest.raises(GeneratorError):
        AxiomTag.parse("XYZ")


def test_premise_predicates():
    x, y = Stream.ep([1, 2], [0]), Stream.ep([0, 3], [0])
    assert premise_holds("SE", x, y).preferred == "x"
    assert premise_holds("PD", x, y).preferred == "x"
    assert premise_holds("PD", Stream.ep([1, 2], [0]), Stream.ep([0, 4], [0])).status.name == "INVALID"
    assert premise_holds("AN", x, swap(x, 1, 2)).verified
    assert premise_holds("M", Stream.constant(2), Stream.constant(1)).preferred == "x"
    assert not premise_holds("M", Stream.ep([], [1, 0]), Stream.ep([], [0, 1])).verified


def test_prop1_anonymity_failure():
    x = Stream.ep([0], [2])
    y = swap(x, 1, 2)
    assert premise_holds("AN", x, y).verified
    assert (w_prop1(x, range(5)), w_prop1(y, range(5))) == (Fraction(-1, 2), Fraction(-1, 4))


@pytest.mark.parametrize("axiom", ["GE", "IE", "WE", "GPD", "SE", "PD"])
def test_generated_premises_validate(axiom):
    for inst in generate_many(axiom, FIVE, 40, seed=1):
        r = validate(inst.pairing, inst.x, inst.y, axiom)
        assert r.verified and r.preferred == "x"


def test_generated_we_pairing_covers_everything():
    for inst in generate_many("WE", FIVE, 40, seed=2):
        dom = inst.pairing.domain()
        assert dom.first_difference(type(dom).everything()) is None


def test_an_and_m_generators():
    for inst in generate_many("AN", FIVE, 50, seed=3):
        assert is_finite_permutation(inst.x, inst.y)
    for inst in generate_many("M", FIVE, 50, seed=3):
        assert dominates(inst.x, inst.y)


def test_reproducible():
    one = [i.to_json() for i in generate_many("GE", FIVE, 30, seed=11)]
    two = [i.to_json() for i in generate_many("GE", FIVE, 30, seed=11)]
    assert one == two
    assert one != [i.to_json() for i in generate_many("GE", FIVE, 30, seed=12)]


def test_audit_reports_violations():
    report = audit_swf(w_min, "GE", FIVE, 200, seed=0)
    assert not report.passed
    body = report.to_json()
    assert body["trials"] == 200 and len(body["violations"]) == len(report.violations)


def test_audit_passes():
    assert audit_swf(w_min, "WE", FIVE, 200, seed=0).passed
    assert audit_swf(lambda s: w_prop1(s, range(5)), "GE", FIVE, 200, seed=0).passed


def test_implications_on_generated_ge():
    assert implication_failures(generate_many("GE", FIVE, 150, seed=4)) == []


def test_transfer_generators_need_equal_gaps():
    with pytest.raises(GeneratorError):
        generate_many("PD", GeneratorConfig((0, 1, 3, 7)), 1, seed=0)


def test_config_checks():
    with pytest.raises(GeneratorError):
        GeneratorConfig(())
    with pytest.raises(GeneratorError):
        GeneratorConfig((0, 1), max_period=0)


@given(ep_streams())
def test_permutation_premise_is_symmetric(x):
    y = swap(x, 1, 3)
    assert premise_holds("AN", x, y).verified == premise_holds("AN", y, x).verified
