"""Axiom predicates, premise generators and audit harnesses.

Generators never reject: each instance is assembled so that its premise holds
by construction, and the attached pairing is re-validated before use.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Sequence

from .domains import UtilityDomain
from .errors import GeneratorError
from .pairing import PairingFunction, Status, WitnessReport, find_witness, pair_orientation, validate
from .streams import (
    Stream,
    _comparable,
    difference_set,
    dominates,
    is_finite_permutation,
    stream_to_json,
    swap,
)
from .swr import ComparisonVerdict, Relation


class AxiomTag(enum.Enum):
    AN = "AN"
    M = "M"
    PD = "PD"
    SE = "SE"
    GE = "GE"
    GPD = "GPD"
    IE = "IE"
    WE = "WE"

    @classmethod
    def parse(cls, name: "str | AxiomTag") -> "AxiomTag":
        if isinstance(name, AxiomTag):
            return name
        try:
            return cls(name.upper())
        except ValueError:
            raise GeneratorError(f"unknown axiom {name!r}") from None

    def implies(self) -> tuple["AxiomTag", ...]:
        """Axioms whose premise is implied by this one's (given matching coverage)."""
        return _IMPLIES.get(self, ())

    @property
    def strict(self) -> bool:
        return self not in (AxiomTag.AN, AxiomTag.M)


_IMPLIES = {
    AxiomTag.GE: (AxiomTag.IE, AxiomTag.WE, AxiomTag.GPD),
    AxiomTag.IE: (AxiomTag.WE,),
    AxiomTag.SE: (AxiomTag.GE,),
    AxiomTag.PD: (AxiomTag.GPD, AxiomTag.SE),
}


# -- premise predicates -------------------------------------------------------

def _single_pair(x: Stream, y: Stream, transfer: bool, axiom: str) -> WitnessReport:
    xa, ya = _comparable(x, y)
    diff = difference_set(xa, ya)
    if not diff.is_finite():
        return WitnessReport(axiom, Status.INVALID, reason="infinitely many coordinates differ")
    members = sorted(diff.explicit)
    if len(members) != 2:
        return WitnessReport(axiom, Status.INVALID, reason=f"{len(members)} coordinates differ, need exactly 2")
    i, j = members
    who = pair_orientation(xa[i], xa[j], ya[i], ya[j], transfer)
    if who is None:
        return WitnessReport(axiom, Status.INVALID, reason=f"coordinates {i}, {j} do not nest")
    status = Status.VERIFIED_PERIODIC if xa.periodic else Status.VERIFIED_TO_DEPTH
    return WitnessReport(axiom, status, who, PairingFunction(((i, j),)), xa.depth, None, 1)


def premise_holds(axiom: "str | AxiomTag", x: Stream, y: Stream, depth: int = 200) -> WitnessReport:
    """Does the premise of ``axiom`` hold between ``x`` and ``y``?

    ``preferred`` in the report names the stream the axiom favours; for AN it
    is ``None`` (indifference) and for M it is the dominating stream.
    """
    tag = AxiomTag.parse(axiom)
    xa, ya = _comparable(x, y)
    ok_status = Status.VERIFIED_PERIODIC if xa.periodic else Status.VERIFIED_TO_DEPTH
    if tag is AxiomTag.AN:
        if is_finite_permutation(xa, ya):
            return WitnessReport("AN", ok_status, None, depth=xa.depth)
        return WitnessReport("AN", Status.INVALID, reason="not a finite permutation")
    if tag is AxiomTag.M:
        if dominates(xa, ya):
            return WitnessReport("M", ok_status, "x", depth=xa.depth)
        if dominates(ya, xa):
            return WitnessReport("M", ok_status, "y", depth=xa.depth)
        return WitnessReport("M", Status.INVALID, reason="neither stream dominates")
    if tag in (AxiomTag.PD, AxiomTag.SE):
        return _single_pair(xa, ya, tag is AxiomTag.PD, tag.value)
    if not xa.periodic:
        depth = min(depth, len(xa.pre))
    return find_witness(xa, ya, tag.value, depth)


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    """Shape of generated instances.  ``values`` is the finite value pool."""

    values: tuple[Fraction, ...]
    max_pre: int = 6
    max_period: int = 12
    depth: int = 200
    pair_prob: float = 0.6

    def __post_init__(self) -> None:
        vals = tuple(sorted(set(Fraction(v) for v in self.values)))
        object.__setattr__(self, "values", vals)
        if not vals:
            raise GeneratorError("empty value pool")
        if self.max_period < 1 or self.max_pre < 0:
            raise GeneratorError("need max_period >= 1 and max_pre >= 0")

    @classmethod
    def for_domain(cls, Y: UtilityDomain | Sequence[Any], **kw: Any) -> "GeneratorConfig":
        if isinstance(Y, UtilityDomain):
            return cls(tuple(Y.sample(kw.pop("per_chain", 6))), **kw)
        return cls(tuple(Fraction(v) for v in Y), **kw)


@dataclass(frozen=True)
class Instance:
    """``x`` is the stream the axiom favours (weakly for M, AN is symmetric)."""

    axiom: AxiomTag
    x: Stream
    y: Stream
    pairing: PairingFunction | None = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"axiom": self.axiom.value, "x": stream_to_json(self.x), "y": stream_to_json(self.y)}
        if self.pairing is not None:
            out["pairing"] = self.pairing.to_json()
        if self.note:
            out["note"] = self.note
        return out


def _chains(values: Sequence[Fraction], transfer: bool) -> list[tuple[Fraction, ...]]:
    quads = list(combinations(values, 4))
    if transfer:
        quads = [q for q in quads if q[1] - q[0] == q[3] - q[2]]
    return quads


def _fill_block(
    rng: random.Random, n: int, cfg: GeneratorConfig, chains: list, full: bool, force: bool, offset: int
) -> tuple[list[Fraction], list[Fraction], list[tuple[int, int]]]:
    """Values for ``n`` consecutive positions starting after ``offset`` plus pairs inside the block."""
    xs: list[Fraction | None] = [None] * n
    ys: list[Fraction | None] = [None] * n
    order = list(range(n))
    rng.shuffle(order)
    pairs = []
    for k in range(0, n - 1, 2):
        if not (full or rng.random() < cfg.pair_prob or (force and not pairs)):
            continue
        i, j = order[k], order[k + 1]
        lo_spread, lo, hi, hi_spread = rng.choice(chains)
        # x is the nested stream, y the spread one: y_i < x_i < x_j < y_j
        xs[i], ys[i], xs[j], ys[j] = lo, lo_spread, hi, hi_spread
        pairs.append((offset + i + 1, offset + j + 1))
    for t in range(n):
        if xs[t] is None:
            xs[t] = ys[t] = rng.choice(cfg.values)
    return xs, ys, pairs  # type: ignore[return-value]


def _pick_lengths(rng: random.Random, cfg: GeneratorConfig, even: bool) -> tuple[int, int]:
    pre = rng.randint(0, cfg.max_pre)
    per = rng.randint(1, cfg.max_period)
    if even:
        pre -= pre % 2
        per = max(2, per - per % 2)
    else:
        per = max(per, 2)
    return pre, per


def _equity_instance(rng: random.Random, tag: AxiomTag, cfg: GeneratorConfig) -> Instance:
    transfer = tag in (AxiomTag.GPD, AxiomTag.PD)
    chains = _chains(cfg.values, transfer)
    if not chains:
        kind = "equal-gap four-value" if transfer else "four-value"
        raise GeneratorError(f"value pool {list(map(str, cfg.values))} has no {kind} chain")
    if tag in (AxiomTag.SE, AxiomTag.PD):
        pre, per = rng.randint(2, max(2, cfg.max_pre)), rng.randint(1, cfg.max_period)
        i, j = rng.sample(range(1, pre + 1), 2)
        lo_spread, lo, hi, hi_spread = rng.choice(chains)
        base = [rng.choice(cfg.values) for _ in range(pre + per)]
        xs, ys = list(base), list(base)
        xs[i - 1], ys[i - 1], xs[j - 1], ys[j - 1] = lo, lo_spread, hi, hi_spread
        alpha = PairingFunction(((i, j),))
        return Instance(tag, Stream.ep(xs[:pre], xs[pre:]), Stream.ep(ys[:pre], ys[pre:]), alpha)
    full = tag is AxiomTag.WE
    pre, per = _pick_lengths(rng, cfg, full)
    want_infinite = tag in (AxiomTag.IE, AxiomTag.WE) or rng.random() < 0.7
    px, py, pre_pairs = _fill_block(rng, pre, cfg, chains, full, not want_infinite, 0)
    qx, qy, per_pairs = _fill_block(rng, per, cfg, chains, full, want_infinite, pre)
    if not pre_pairs and not per_pairs:
        # an all-unpaired draw: force one pair into the period
        qx, qy, per_pairs = _fill_block(rng, per, cfg, chains, full, True, pre)
    alpha = PairingFunction(tuple(pre_pairs), tuple(per_pairs), per if per_pairs else 0)
    return Instance(tag, Stream.ep(px, qx), Stream.ep(py, qy), alpha)


def _an_instance(rng: random.Random, cfg: GeneratorConfig) -> Instance:
    pre, per = rng.randint(2, max(2, cfg.max_pre)), rng.randint(1, cfg.max_period)
    xs = [rng.choice(cfg.values) for _ in range(pre + per)]
    x = Stream.ep(xs[:pre], xs[pre:])
    i, j = rng.sample(range(1, pre + per + 1), 2)
    return Instance(AxiomTag.AN, x, swap(x, i, j), note=f"swap {i} {j}")


def _m_instance(rng: random.Random, cfg: GeneratorConfig) -> Instance:
    pre, per = rng.randint(0, cfg.max_pre), rng.randint(1, cfg.max_period)
    xs = [rng.choice(cfg.values) for _ in range(pre + per)]
    ys = []
    for v in xs:
        lower = [u for u in cfg.values if u <= v]
        ys.append(rng.choice(lower) if rng.random() < 0.5 else v)
    return Instance(AxiomTag.M, Stream.ep(xs[:pre], xs[pre:]), Stream.ep(ys[:pre], ys[pre:]))


def generate(axiom: "str | AxiomTag", cfg: GeneratorConfig, rng: random.Random) -> Instance:
    tag = AxiomTag.parse(axiom)
    if tag is AxiomTag.AN:
        inst = _an_instance(rng, cfg)
    elif tag is AxiomTag.M:
        inst = _m_instance(rng, cfg)
    else:
        inst = _equity_instance(rng, tag, cfg)
        report = validate(inst.pairing, inst.x, inst.y, tag.value)  # type: ignore[arg-type]
        if not report.verified or report.preferred != "x":
            raise GeneratorError(f"internal: generated {tag.value} instance failed validation: {report.reason}")
    return inst


def generate_many(axiom: "str | AxiomTag", cfg: GeneratorConfig, trials: int, seed: int) -> list[Instance]:
    rng = random.Random(seed)
    return [generate(axiom, cfg, rng) for _ in range(trials)]


# -- audits -------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    trial: int
    instance: Instance
    observed: tuple[Any, Any]

    def to_json(self) -> dict:
        return {"trial": self.trial, **self.instance.to_json(), "observed": [str(v) for v in self.observed]}


@dataclass
class AuditReport:
    axiom: AxiomTag
    trials: int
    seed: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom.value,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "violations": [v.to_json() for v in self.violations],
        }


def swf_conclusion(tag: AxiomTag, wx: Fraction, wy: Fraction) -> bool:
    if tag is AxiomTag.AN:
        return wx == wy
    if tag is AxiomTag.M:
        return wx >= wy
    return wx > wy


def swr_conclusion(tag: AxiomTag, verdict: ComparisonVerdict) -> bool:
    rel = verdict.relation
    if tag is AxiomTag.AN:
        return rel is Relation.EQUIVALENT
    if tag is AxiomTag.M:
        return rel in (Relation.STRICTLY_GREATER, Relation.EQUIVALENT)
    return rel is Relation.STRICTLY_GREATER


def audit_swf(
    W: Callable[[Stream], Fraction], axiom: "str | AxiomTag", cfg: GeneratorConfig, trials: int = 1000, seed: int = 0
) -> AuditReport:
    """Check ``W(x) > W(y)`` (``>=`` for M, ``==`` for AN) on generated premises."""
    tag = AxiomTag.parse(axiom)
    report = AuditReport(tag, trials, seed)
    for t, inst in enumerate(generate_many(tag, cfg, trials, seed)):
        wx, wy = W(inst.x), W(inst.y)
        if not swf_conclusion(tag, wx, wy):
            report.violations.append(Violation(t, inst, (wx, wy)))
    return report


def audit_swr(
    R: Callable[[Stream, Stream], ComparisonVerdict],
    axiom: "str | AxiomTag",
    cfg: GeneratorConfig,
    trials: int = 500,
    seed: int = 0,
) -> AuditReport:
    """``R(x, y)`` gives the verdict for ``x`` against ``y``."""
    tag = AxiomTag.parse(axiom)
    report = AuditReport(tag, trials, seed)
    for t, inst in enumerate(generate_many(tag, cfg, trials, seed)):
        verdict = R(inst.x, inst.y)
        if not swr_conclusion(tag, verdict):
            report.violations.append(Violation(t, inst, (verdict.relation.value, verdict.pattern)))
    return report


def implication_failures(instances: Sequence[Instance]) -> list[tuple[int, str]]:
    """For GE instances: the same pairing must also witness IE when its
    domain is infinite and WE when it covers every index."""
    out = []
    for t, inst in enumerate(instances):
        alpha = inst.pairing
        assert alpha is not None
        if not validate(alpha, inst.x, inst.y, "GE").verified:
            out.append((t, "GE"))
            continue
        dom = alpha.domain()
        if not dom.is_finite() and not validate(alpha, inst.x, inst.y, "IE").verified:
            out.append((t, "IE"))
        covers_all = dom.first_difference(type(dom).everything()) is None
        if covers_all and not validate(alpha, inst.x, inst.y, "WE").verified:
            out.append((t, "WE"))
        if not find_witness(inst.x, inst.y, "GE", 60, preferred="x").verified:
            out.append((t, "GE-search"))
    return out
