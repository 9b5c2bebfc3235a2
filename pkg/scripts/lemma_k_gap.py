#!/usr/bin/env python3
"""How often does the leximin sign sequence settle later than the first index
carrying the least paired value of the spread stream?

Compares two candidate bounds against the exact stabilization index:
  k_literal  first index anywhere holding h (h = least paired value)
  k_paired   first paired index holding h
and prints the smallest periodic counterexample to the literal bound.
"""

from __future__ import annotations

import argparse
import itertools
from collections import Counter
from dataclasses import dataclass

from equistream.axioms import GeneratorConfig, generate_many
from equistream.pairing import PairingFunction, validate
from equistream.streams import Stream, format_rational
from equistream.swr import filter_compare, lemma_k, lemma_k_paired, sorted_prefix


@dataclass
class GapConfig:
    trials: int = 500
    seed: int = 20240611
    values: int = 5


def smallest_counterexample():
    for p in (2, 3, 4):
        for xs in itertools.product(range(4), repeat=p):
            for ys in itertools.product(range(4), repeat=p):
                for i, j in itertools.combinations(range(1, p + 1), 2):
                    alpha = PairingFunction((), ((i, j),), p)
                    x, y = Stream.ep([], xs), Stream.ep([], ys)
                    rep = validate(alpha, x, y, "GE")
                    if not (rep.verified and rep.preferred == "x"):
                        continue
                    idx = alpha.domain().upto(3 * p)
                    stab = filter_compare(y, x).stabilization
                    if stab > lemma_k(y, x, idx):
                        return x, y, alpha, stab, lemma_k(y, x, idx)
    return None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=GapConfig.trials)
    ap.add_argument("--seed", type=int, default=GapConfig.seed)
    cfg = GapConfig(**vars(ap.parse_args()))

    gen = GeneratorConfig(tuple(range(cfg.values)))
    late = Counter()
    for inst in generate_many("GE", gen, cfg.trials, cfg.seed):
        dom = inst.pairing.domain()
        idx = dom.upto(dom.horizon() + 1)
        stab = filter_compare(inst.y, inst.x).stabilization
        late["literal"] += stab > lemma_k(inst.y, inst.x, idx)
        late["paired"] += stab > lemma_k_paired(inst.y, idx)
    print(f"{cfg.trials} GE trials: settles after k_literal in {late['literal']}, after k_paired in {late['paired']}")

    found = smallest_counterexample()
    if found:
        x, y, alpha, stab, k = found
        fmt = lambda s: "(" + ", ".join(format_rational(v) for v in s.per) + ")^w"  # noqa: E731
        print(f"favoured x = {fmt(x)}, spread y = {fmt(y)}, pairs {alpha.base} + {alpha.period}k")
        print(f"k_literal = {k}, stabilization = {stab}")
        for n in range(1, stab + 1):
            print(f"  n={n}: sort y = {[str(v) for v in sorted_prefix(y, n)]}  sort x = {[str(v) for v in sorted_prefix(x, n)]}")


if __name__ == "__main__":
    main()
