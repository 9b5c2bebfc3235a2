#!/usr/bin/env python3
"""Verify the impossibility constructions over many rational pairs r < s."""

from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

from equistream.constructions import EXAMPLES, rationals, verify_example, verify_thm1, verify_thm2, verify_thm3
from equistream.errors import DepthTooSmall


@dataclass
class ConstructionSweep:
    thm1_rationals: int = 20  # all pairs among q_1..q_n
    thm1_depth: int = 5000
    factorial_rationals: int = 7  # blocks 2(n!)+1 fit below 12000 for n <= 7
    factorial_depth: int = 12000


def sweep(cfg: ConstructionSweep) -> int:
    failures = 0
    for name in sorted(EXAMPLES):
        tr = verify_example(name)
        failures += not tr.verified
        print(f"{name:<10} verified={tr.verified} flags={tr.flags}")

    jobs = [(verify_thm1, cfg.thm1_rationals, cfg.thm1_depth)]
    jobs += [(verify_thm2, cfg.factorial_rationals, cfg.factorial_depth),
             (verify_thm3, cfg.factorial_rationals, cfg.factorial_depth)]
    for verify, count, depth in jobs:
        t0 = time.perf_counter()
        ok = short = 0
        pairs = list(itertools.combinations(sorted(rationals(count)), 2))
        for r, s in pairs:
            try:
                tr = verify(r, s, depth)
            except DepthTooSmall:
                short += 1
                continue
            ok += tr.verified
            if not tr.verified:
                failures += 1
                print(f"  FAILED {verify.__name__} r={r} s={s}")
        dt = time.perf_counter() - t0
        print(f"{verify.__name__:<13} {ok}/{len(pairs)} verified, {short} need more depth, {dt:.1f}s")
    return failures


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--thm1-rationals", type=int, default=ConstructionSweep.thm1_rationals)
    ap.add_argument("--thm1-depth", type=int, default=ConstructionSweep.thm1_depth)
    args = ap.parse_args()
    cfg = ConstructionSweep(thm1_rationals=args.thm1_rationals, thm1_depth=args.thm1_depth)
    raise SystemExit(1 if sweep(cfg) else 0)


if __name__ == "__main__":
    main()
