#!/usr/bin/env python3
"""Axiom audit sweep: every welfare function against every axiom.

Prints a violation-count table and optionally writes the full reports as JSON.
Expected failures (prop1/AN, prop2/M, min/GE and friends) show up as nonzero
counts; they are what the impossibility results predict.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from equistream.axioms import AxiomTag, GeneratorConfig, audit_swf, audit_swr
from equistream.domains import reference_domains
from equistream.swf import w_min, w_prop1, w_prop2, w_rho_inf
from equistream.swr import filter_compare


@dataclass
class SweepConfig:
    trials: int = 1000
    seed: int = 0
    max_period: int = 12
    depth: int = 200
    axioms: list[str] = field(default_factory=lambda: [t.value for t in AxiomTag])
    out: str | None = None


def subjects():
    five, seven = tuple(range(5)), tuple(range(7))
    bold = reference_domains()["Y_bold"]
    yield "prop1 {0..4}", GeneratorConfig(five), lambda s: w_prop1(s, five)
    yield "prop2 {0..6}", GeneratorConfig(seven), lambda s: w_prop2(s, seven)
    yield "min {0..4}", GeneratorConfig(five), w_min
    yield "rhoinf Y_bold", GeneratorConfig.for_domain(bold), lambda s: w_rho_inf(s, bold, Fraction(1, 2))
    yield "leximin {0..4}", GeneratorConfig(five), None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    cfg = SweepConfig()
    for key, val in asdict(cfg).items():
        if key != "axioms":
            ap.add_argument(f"--{key.replace('_', '-')}", type=type(val) if val is not None else str, default=val)
    args = ap.parse_args()
    cfg = SweepConfig(**{k: v for k, v in vars(args).items()})

    reports = {}
    print(f"{'subject':<16}" + "".join(f"{a:>6}" for a in cfg.axioms) + "   seconds")
    for name, gen, W in subjects():
        gen = GeneratorConfig(gen.values, max_period=cfg.max_period, depth=cfg.depth)
        t0 = time.perf_counter()
        row = {}
        for ax in cfg.axioms:
            if W is None:
                rep = audit_swr(filter_compare, ax, gen, cfg.trials // 2, cfg.seed)
            else:
                rep = audit_swf(W, ax, gen, cfg.trials, cfg.seed)
            row[ax] = rep
        dt = time.perf_counter() - t0
        print(f"{name:<16}" + "".join(f"{len(r.violations):>6}" for r in row.values()) + f"   {dt:7.2f}")
        reports[name] = {ax: {**r.to_json(), "violations": r.to_json()["violations"][:3]} for ax, r in row.items()}
    if cfg.out:
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "reports": reports}, indent=2))
        print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
