"""Filter-leximin comparison of utility streams.

``x <=_F y`` holds when the set of ``n`` with ``sort(x[:n]) <=_lex sort(y[:n])``
is co-finite.  Only the co-finite filter is implemented, so the relation is a
preorder and two streams can be incomparable.

Sorted prefixes are compared through value counts.  Scanning values upward,
the first value ``v`` whose counts in ``x[:n]`` and ``y[:n]`` differ decides:
the stream holding more copies of ``v`` is lexicographically smaller.  For
eventually periodic streams each count grows linearly along every residue
class of ``n`` modulo the common period, so the eventual sign on each residue
class, and the index after which it never changes, are computed exactly.
"""

from __future__ import annotations

import enum
from bisect import insort
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import OutOfDepth
from .streams import Stream, _comparable, align, coordinate


class Relation(enum.Enum):
    STRICTLY_LESS = "StrictlyLess"
    EQUIVALENT = "Equivalent"
    STRICTLY_GREATER = "StrictlyGreater"
    INCOMPARABLE = "Incomparable"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Verdict for ``x`` relative to ``y``.

    ``pattern`` is the eventual sign block (one entry per residue class,
    starting at index ``pattern_start``), ``stabilization`` the least ``N``
    such that every ``n >= N`` lies in the membership set that the verdict
    rests on (``None`` when no set is co-finite).
    """

    relation: Relation
    depth: int | None
    exact: bool
    pattern: tuple[int, ...] = ()
    pattern_start: int | None = None
    stabilization: int | None = None
    signs: tuple[int, ...] = field(default=(), repr=False)

    def flipped(self) -> "ComparisonVerdict":
        swap = {Relation.STRICTLY_LESS: Relation.STRICTLY_GREATER, Relation.STRICTLY_GREATER: Relation.STRICTLY_LESS}
        return ComparisonVerdict(
            swap.get(self.relation, self.relation), self.depth, self.exact,
            tuple(-s for s in self.pattern), self.pattern_start, self.stabilization,
            tuple(-s for s in self.signs),
        )

    def to_json(self) -> dict:
        out = {
            "relation": self.relation.value,
            "exact": self.exact,
            "pattern": list(self.pattern),
            "pattern_start": self.pattern_start,
            "stabilization": self.stabilization,
        }
        if self.depth is not None:
            out["depth"] = self.depth
        return out


def sorted_prefix(x: Stream, n: int) -> list[Fraction]:
    if n < 1:
        raise ValueError("prefix length must be positive")
    return sorted(x.prefix(n))


def lex_compare(a: Sequence[Fraction], b: Sequence[Fraction]) -> int:
    """-1, 0 or 1 as ``a`` is lexicographically below, equal to or above ``b``."""
    for u, v in zip(a, b):
        if u != v:
            return -1 if u < v else 1
    return (len(a) > len(b)) - (len(a) < len(b))


def sign_sequence(x: Stream, y: Stream, T: int) -> list[int]:
    """``s_n = lex_compare(sort(x[:n]), sort(y[:n]))`` for ``n = 1..T``.

    Maintains the two sorted prefixes incrementally; each step compares the
    lists only up to their first difference.
    """
    xa, ya = _comparable(x, y)
    if not xa.periodic and T > len(xa.pre):
        raise OutOfDepth(f"depth {T} exceeds stream depth {len(xa.pre)}")
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    out = []
    for n in range(1, T + 1):
        insort(xs, coordinate(xa, n))
        insort(ys, coordinate(ya, n))
        out.append(lex_compare(xs, ys))
    return out


def _least_tail(signs: Sequence[int], ok, start: int = 1) -> int | None:
    """Least ``N >= start`` with ``ok(s_m)`` for every listed ``m >= N``."""
    N = len(signs) + 1
    while N > start and ok(signs[N - 2]):
        N -= 1
    return N if N <= len(signs) else None


def _rule(pattern: Sequence[int]) -> Relation:
    le = all(s <= 0 for s in pattern)
    ge = all(s >= 0 for s in pattern)
    if le and ge:
        return Relation.EQUIVALENT
    if le:
        return Relation.STRICTLY_LESS
    if ge:
        return Relation.STRICTLY_GREATER
    return Relation.INCOMPARABLE


def _stabilization(relation: Relation, signs: Sequence[int], fallback: int) -> int | None:
    """Least ``N`` after which every listed sign is consistent with ``relation``."""
    if relation is Relation.STRICTLY_LESS:
        ok = lambda s: s <= 0  # noqa: E731
    elif relation is Relation.STRICTLY_GREATER:
        ok = lambda s: s >= 0  # noqa: E731
    elif relation is Relation.EQUIVALENT:
        ok = lambda s: s == 0  # noqa: E731
    else:
        return None
    N = _least_tail(signs, ok)
    return fallback if N is None else N


def eventual_signs(x: Stream, y: Stream) -> tuple[int, int, list[int]]:
    """Exact eventual sign pattern for two periodic streams.

    Returns ``(start, threshold, pattern)``: for ``n >= threshold``,
    ``s_n = pattern[(n - start) % P]``.
    """
    xa, ya = align(x, y)
    n0, P = len(xa.pre), len(xa.per)
    values = sorted(xa.values() | ya.values())

    def counts(seq: Sequence[Fraction]) -> dict[Fraction, int]:
        c: dict[Fraction, int] = {}
        for v in seq:
            c[v] = c.get(v, 0) + 1
        return c

    base_x, base_y = counts(xa.pre), counts(ya.pre)
    per_x, per_y = counts(xa.per), counts(ya.per)
    pattern = []
    threshold_q = 0
    for r in range(1, P + 1):
        # index n = n0 + q*P + r
        part_x, part_y = counts(xa.per[:r]), counts(ya.per[:r])
        sign = 0
        for v in values:
            A = base_x.get(v, 0) + part_x.get(v, 0) - base_y.get(v, 0) - part_y.get(v, 0)
            delta = per_x.get(v, 0) - per_y.get(v, 0)
            if delta == 0 and A == 0:
                continue
            if delta == 0:
                sign = -1 if A > 0 else 1
            else:
                sign = -1 if delta > 0 else 1
                # d = A + q*delta has the sign of delta once q > -A/delta
                q_star = (-A) // delta + 1 if delta > 0 else (A // (-delta)) + 1
                threshold_q = max(threshold_q, q_star)
            break
        pattern.append(sign)
    return n0 + 1, n0 + threshold_q * P + 1, pattern


def filter_compare(x: Stream, y: Stream, depth: int = 400, window: int = 100) -> ComparisonVerdict:
    """Compare ``x`` with ``y`` under the co-finite filter leximin relation.

    Periodic inputs are decided exactly; ``depth`` and ``window`` then only
    bound the reported sign prefix.  Truncated inputs are judged on the signs
    in ``[window, depth]``: a sign block that repeats with some period over the
    whole window is taken as the eventual pattern, otherwise the verdict is
    Undetermined.
    """
    if not 1 <= window < depth:
        raise ValueError("need 1 <= window < depth")
    xa, ya = _comparable(x, y)
    if xa.periodic:
        start, threshold, pattern = eventual_signs(xa, ya)
        relation = _rule(pattern)
        P = len(pattern)
        horizon = max(threshold + P, start + P)
        signs = sign_sequence(xa, ya, horizon)
        stab = _stabilization(relation, signs, horizon)
        return ComparisonVerdict(relation, None, True, tuple(pattern), start, stab, tuple(signs[:depth]))

    signs = sign_sequence(xa, ya, depth)
    block = signs[window - 1:]
    width = len(block)
    for p in range(1, width // 2 + 1):
        if all(block[i] == block[i + p] for i in range(width - p)):
            pattern = block[-p:]
            start = depth - p + 1
            relation = _rule(pattern)
            stab = _stabilization(relation, signs, depth)
            return ComparisonVerdict(relation, depth, False, tuple(pattern), start, stab, tuple(signs))
    return ComparisonVerdict(Relation.UNDETERMINED, depth, False, (), None, None, tuple(signs))


def lemma_k(x: Stream, y: Stream, domain_of_alpha: Sequence[int]) -> int:
    """First index where the spread stream ``x`` takes its least paired value.

    ``h = min{x_n : n paired}`` and ``k = min{n : x_n = h}``; from ``k`` on
    the sorted prefix of ``x`` is claimed to stay strictly below that of ``y``.
    The minimum is taken over the supplied (finite) list of paired indices.
    """
    h = min(coordinate(x, n) for n in domain_of_alpha)
    n = 1
    while coordinate(x, n) != h:
        n += 1
    return n


def lemma_k_paired(x: Stream, domain_of_alpha: Sequence[int]) -> int:
    """Like :func:`lemma_k` but the first *paired* index carrying ``h``."""
    h = min(coordinate(x, n) for n in domain_of_alpha)
    return min(n for n in domain_of_alpha if coordinate(x, n) == h)
