"""Pairing functions and equity witnesses.

A pairing function is a partial involution on the positive integers without
fixed points.  Between two streams ``x`` and ``y`` it certifies an equity
relation when every linked pair ``(i, j)`` is a nested spread reduction:

    y_i < x_i < x_j < y_j    (or the mirror image with i and j swapped)

which makes ``x`` the more equal stream, strictly preferred to ``y``.

Search uses bipartite matching: a valid pair always joins an index where
the preferred stream is higher (``x_i > y_i``) with one where it is lower
(``x_j < y_j``), so no odd cycles can arise and a general matching is
never needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Iterator, Sequence

from .errors import DescriptorError, InvalidPairing, OutOfDepth, SizeLimit
from .streams import (
    PeriodicIndexSet,
    Stream,
    _comparable,
    align,
    coordinate,
    difference_set,
)

EQUITY_AXIOMS = ("GE", "IE", "WE", "GPD", "SE", "PD")
_TRANSFER = {"GPD", "PD"}
_SINGLE = {"SE", "PD"}


@dataclass(frozen=True)
class PairingFunction:
    """Explicit pairs plus, optionally, base pairs repeated with period ``period``.

    Base pair ``(i, j)`` contributes ``(i + k*period, j + k*period)`` for every
    ``k >= 0``.
    """

    pairs: tuple[tuple[int, int], ...] = ()
    base: tuple[tuple[int, int], ...] = ()
    period: int = 0

    def __post_init__(self) -> None:
        pairs = tuple(sorted(tuple(sorted((int(i), int(j)))) for i, j in self.pairs))
        base = tuple(sorted(tuple(sorted((int(i), int(j)))) for i, j in self.base))
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "base", base)
        seen: set[int] = set()
        for i, j in pairs + base:
            if i == j:
                raise InvalidPairing(f"fixed point at {i}")
            if i < 1:
                raise InvalidPairing("indices are positive integers")
            for t in (i, j):
                if t in seen:
                    raise InvalidPairing(f"index {t} appears in two pairs")
                seen.add(t)
        if base:
            p = self.period
            if p < 1:
                raise InvalidPairing("periodic pairing needs a positive period")
            ends = [t for pr in base for t in pr]
            if len({t % p for t in ends}) != len(ends):
                raise InvalidPairing("translates of the base pairs collide")
            for i, j in pairs:
                for t in (i, j):
                    for e in ends:
                        if t >= e and (t - e) % p == 0:
                            raise InvalidPairing(f"index {t} is also hit by a translate of base index {e}")
        elif self.period:
            object.__setattr__(self, "period", 0)

    @classmethod
    def finite(cls, pairs: Iterable[tuple[int, int]]) -> "PairingFunction":
        return cls(tuple(pairs))

    @classmethod
    def from_map(cls, mapping: dict[int, int]) -> "PairingFunction":
        """Build from an explicit map; checks ``dom == ran`` and involution."""
        for i, j in mapping.items():
            if mapping.get(j) != i:
                raise InvalidPairing(f"alpha(alpha({i})) != {i} or {j} missing from the domain")
        return cls(tuple((i, j) for i, j in mapping.items() if i < j))

    @property
    def periodic(self) -> bool:
        return bool(self.base)

    @property
    def windowed(self) -> bool:
        """All base pairs fit inside one window of length ``period``."""
        if not self.base:
            return True
        ends = [t for pr in self.base for t in pr]
        return max(ends) - min(ends) < self.period

    def __call__(self, n: int) -> int | None:
        for i, j in self.pairs:
            if n == i:
                return j
            if n == j:
                return i
        for i, j in self.base:
            for a, b in ((i, j), (j, i)):
                if n >= a and (n - a) % self.period == 0:
                    return b + (n - a)
        return None

    def domain(self) -> PeriodicIndexSet:
        explicit = {t for pr in self.pairs for t in pr}
        if not self.base:
            return PeriodicIndexSet.finite(explicit)
        ends = [t for pr in self.base for t in pr]
        top = max(max(ends), max(explicit, default=0))
        members = set(explicit)
        for e in ends:
            members.update(range(e, top + 1, self.period))
        return PeriodicIndexSet(
            frozenset(members), frozenset(e % self.period for e in ends), top, self.period
        )

    def iter_pairs(self, bound: int) -> Iterator[tuple[int, int]]:
        """Pairs whose smaller index is ``<= bound``."""
        for pr in self.pairs:
            if pr[0] <= bound:
                yield pr
        if self.base:
            k = 0
            lowest = min(i for i, _ in self.base)
            while lowest + k * self.period <= bound:
                shift = k * self.period
                for i, j in self.base:
                    if i + shift <= bound:
                        yield (i + shift, j + shift)
                k += 1

    def restricted(self, bound: int) -> "PairingFunction":
        """The finite pairing of pairs lying entirely inside ``[1, bound]``."""
        return PairingFunction(tuple(pr for pr in self.iter_pairs(bound) if pr[1] <= bound))

    def to_json(self) -> dict:
        out: dict = {"pairs": [list(p) for p in self.pairs]}
        if self.base:
            ends = [t for pr in self.base for t in pr]
            out["periodic"] = {
                "period": self.period,
                "window": [min(ends), min(ends) + self.period - 1],
                "base": [list(p) for p in self.base],
            }
        return out


def pairing_from_json(obj: Any) -> PairingFunction:
    if isinstance(obj, list):
        obj = {"pairs": obj}
    if not isinstance(obj, dict):
        raise DescriptorError("pairing: expected an object or a list of pairs")

    def read(raw: Any, where: str) -> list[tuple[int, int]]:
        if not isinstance(raw, list):
            raise DescriptorError(f"{where}: expected a list")
        out = []
        for k, pr in enumerate(raw):
            if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(t, int) for t in pr)):
                raise DescriptorError(f"{where}[{k}]: expected [i, j] with integer entries")
            out.append((pr[0], pr[1]))
        return out

    pairs = read(obj.get("pairs", []), "pairs")
    per = obj.get("periodic")
    try:
        if per is None:
            return PairingFunction(tuple(pairs))
        if not isinstance(per, dict) or not isinstance(per.get("period"), int):
            raise DescriptorError("periodic: expected an object with an integer 'period'")
        return PairingFunction(tuple(pairs), tuple(read(per.get("base", []), "periodic.base")), per["period"])
    except InvalidPairing as exc:
        raise DescriptorError(f"pairing: {exc}") from exc


class Status(enum.Enum):
    VERIFIED_PERIODIC = "VerifiedPeriodic"
    VERIFIED_TO_DEPTH = "VerifiedToDepth"
    NO_WITNESS_TO_DEPTH = "NoWitnessToDepth"
    INVALID = "Invalid"


@dataclass(frozen=True)
class WitnessReport:
    axiom: str
    status: Status
    preferred: str | None = None  # "x" or "y": the strictly preferred stream
    pairing: PairingFunction | None = None
    depth: int | None = None
    reason: str | None = None
    checked_pairs: int = 0
    open_indices: tuple[int, ...] = field(default=())

    @property
    def verified(self) -> bool:
        return self.status in (Status.VERIFIED_PERIODIC, Status.VERIFIED_TO_DEPTH)

    def __bool__(self) -> bool:
        return self.verified

    def to_json(self) -> dict:
        out: dict = {"axiom": self.axiom, "status": self.status.value}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.preferred:
            out["preferred"] = self.preferred
        if self.pairing is not None:
            out["pairing"] = self.pairing.to_json()
        if self.reason:
            out["reason"] = self.reason
        out["checked_pairs"] = self.checked_pairs
        if self.open_indices:
            out["open_indices"] = len(self.open_indices)
        return out


def pair_orientation(xi: Fraction, xj: Fraction, yi: Fraction, yj: Fraction, transfer: bool = False) -> str | None:
    """Which stream a single linked pair favours: ``"x"``, ``"y"`` or ``None``.

    ``"x"`` means ``y`` is the spread-out stream: ``y_i < x_i < x_j < y_j`` up
    to swapping ``i`` and ``j``.  With ``transfer`` the two moves must be of
    equal size (an exact transfer).
    """
    for (a_i, a_j, b_i, b_j, who) in ((xi, xj, yi, yj, "x"), (yi, yj, xi, xj, "y")):
        # a is the candidate preferred stream, b the spread one
        for (lo_b, lo_a, hi_a, hi_b) in ((b_i, a_i, a_j, b_j), (b_j, a_j, a_i, b_i)):
            if lo_b < lo_a < hi_a < hi_b and (not transfer or lo_a - lo_b == hi_b - hi_a):
                return who
    return None


def _invalid(axiom: str, reason: str, pairing: PairingFunction | None, depth: int | None = None) -> WitnessReport:
    return WitnessReport(axiom, Status.INVALID, pairing=pairing, depth=depth, reason=reason)


def validate(
    alpha: PairingFunction,
    x: Stream,
    y: Stream,
    axiom: str = "GE",
    open_indices: Iterable[int] = (),
    preferred: str | None = None,
) -> WitnessReport:
    """Check that ``alpha`` witnesses ``axiom``'s premise between ``x`` and ``y``.

    For aligned periodic streams the check is exhaustive.  For truncations of
    depth ``T`` every pair inside ``[1, T]`` is checked; pairs reaching past
    ``T`` and the caller-declared ``open_indices`` (indices whose partners lie
    beyond the truncation and are verified elsewhere) are reported as open.
    """
    axiom = axiom.upper()
    if axiom not in EQUITY_AXIOMS:
        raise ValueError(f"validate handles {EQUITY_AXIOMS}, not {axiom}")
    transfer = axiom in _TRANSFER
    xa, ya = _comparable(x, y)
    periodic = xa.periodic
    declared_open = set(open_indices)
    if periodic and declared_open:
        raise ValueError("open indices only make sense for truncated streams")

    if periodic:
        n_pre, n_per = len(xa.pre), len(xa.per)
        step = lcm(n_per, alpha.period) if alpha.periodic else n_per
        dom = alpha.domain()
        bound = max(n_pre, dom.offset) + step
        pairs = list(alpha.iter_pairs(bound))
        depth = None
    else:
        depth = len(xa.pre)
        bound = depth
        pairs = list(alpha.iter_pairs(depth))

    direction = preferred
    checked = 0
    crossing: set[int] = set()
    for i, j in pairs:
        if not periodic and j > depth:  # type: ignore[operator]
            crossing.add(i)
            continue
        who = pair_orientation(coordinate(xa, i), coordinate(xa, j), coordinate(ya, i), coordinate(ya, j), transfer)
        if who is None:
            kind = "exact-transfer" if transfer else "nested-spread"
            return _invalid(axiom, f"pair ({i}, {j}) is not a {kind} chain", alpha, depth)
        if direction is None:
            direction = who
        elif who != direction:
            return _invalid(axiom, f"pair ({i}, {j}) favours {who} but earlier pairs favour {direction}", alpha, depth)
        checked += 1

    diff = difference_set(xa, ya)
    if periodic:
        dom = alpha.domain()
        if axiom == "WE":
            gap = dom.first_difference(PeriodicIndexSet.everything())
            if gap is not None:
                return _invalid(axiom, f"coordinate {gap} is not paired", alpha)
        else:
            gap = dom.first_difference(diff)
            if gap is not None:
                what = "differs but is unpaired" if gap in diff else "is paired but equal"
                return _invalid(axiom, f"coordinate {gap} {what}", alpha)
        if axiom == "IE" and dom.is_finite():
            return _invalid(axiom, "the pairing links only finitely many coordinates", alpha)
        if axiom in _SINGLE and (not dom.is_finite() or len(dom.explicit) != 2):
            return _invalid(axiom, "exactly one linked pair is required", alpha)
        if direction is None:
            return _invalid(axiom, "no linked pairs", alpha)
        return WitnessReport(axiom, Status.VERIFIED_PERIODIC, direction, alpha, None, None, checked)

    assert depth is not None
    covered = {t for pr in pairs for t in pr if t <= depth} | declared_open
    open_all = crossing | declared_open
    outside = [t for t in declared_open if t > depth or t < 1]
    if outside:
        return _invalid(axiom, f"open index {outside[0]} lies outside [1, {depth}]", alpha, depth)
    if axiom == "WE":
        missing = next((t for t in range(1, depth + 1) if t not in covered), None)
        if missing is not None:
            return _invalid(axiom, f"coordinate {missing} is not paired", alpha, depth)
    else:
        for t in range(1, depth + 1):
            if (t in covered) != (t in diff):
                what = "differs but is unpaired" if t in diff else "is paired but equal"
                return _invalid(axiom, f"coordinate {t} {what}", alpha, depth)
    if axiom in _SINGLE and (len(pairs) != 1 or open_all):
        return _invalid(axiom, "exactly one linked pair is required", alpha, depth)
    if direction is None:
        return _invalid(axiom, "no linked pair could be checked inside the truncation", alpha, depth)
    return WitnessReport(
        axiom, Status.VERIFIED_TO_DEPTH, direction, alpha, depth, None, checked, tuple(sorted(open_all))
    )


# -- search -----------------------------------------------------------------

def max_bipartite_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum matching by augmenting paths (Kuhn's algorithm).

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u`` in the
    preferred order.  Left vertices are augmented in index order, which makes
    the result deterministic.  Returns ``match_left`` with -1 for unmatched.
    """
    match_left = [-1] * len(adj)
    match_right = [-1] * n_right
    # cheap greedy start
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if match_right[v] == -1:
                match_left[u], match_right[v] = v, u
                break
    for root in range(len(adj)):
        if match_left[root] != -1:
            continue
        seen = [False] * n_right
        # iterative DFS; stack holds (left vertex, next neighbour position)
        stack = [(root, 0)]
        parent_right: dict[int, int] = {}
        found = -1
        while stack and found < 0:
            u, pos = stack[-1]
            nbrs = adj[u]
            while pos < len(nbrs) and seen[nbrs[pos]]:
                pos += 1
            if pos == len(nbrs):
                stack.pop()
                continue
            v = nbrs[pos]
            stack[-1] = (u, pos + 1)
            seen[v] = True
            parent_right[v] = u
            if match_right[v] == -1:
                found = v
            else:
                stack.append((match_right[v], 0))
        if found < 0:
            continue
        v = found
        while v != -1:
            u = parent_right[v]
            prev = match_left[u]
            match_left[u], match_right[v] = v, u
            v = prev
    return match_left


def _match_block(
    idx: Sequence[int], xs: dict[int, Fraction], ys: dict[int, Fraction], who: str, transfer: bool
) -> list[tuple[int, int]] | None:
    """Perfect matching of ``idx`` (all differing) favouring ``who``, or None."""
    a, b = (xs, ys) if who == "x" else (ys, xs)  # a preferred, b spread
    left = [i for i in idx if a[i] > b[i]]
    right = [j for j in idx if a[j] < b[j]]
    if len(left) != len(right):
        return None
    if not left:
        return []
    by_type: dict[tuple[Fraction, Fraction], list[int]] = {}
    for r, j in enumerate(right):
        by_type.setdefault((a[j], b[j]), []).append(r)
    adj = []
    for i in left:
        nbr: list[int] = []
        for (aj, bj), rs in by_type.items():
            if b[i] < a[i] < aj < bj and (not transfer or a[i] - b[i] == bj - aj):
                nbr.extend(rs)
        nbr.sort()
        adj.append(nbr)
    match = max_bipartite_matching(adj, len(right))
    if any(m < 0 for m in match):
        return None
    return [tuple(sorted((i, right[m]))) for i, m in zip(left, match)]  # type: ignore[misc]


def _search_lists(
    xs: dict[int, Fraction], ys: dict[int, Fraction], positions: Sequence[int], axiom: str, directions: Sequence[str]
) -> tuple[str, list[tuple[int, int]]] | None:
    diff = [t for t in positions if xs[t] != ys[t]]
    if axiom == "WE" and len(diff) != len(positions):
        return None
    if axiom in _SINGLE and len(diff) != 2:
        return None
    if not diff:
        return None
    for who in directions:
        m = _match_block(diff, xs, ys, who, axiom in _TRANSFER)
        if m is not None:
            return who, m
    return None


def find_witness(
    x: Stream, y: Stream, axiom: str = "GE", depth: int = 200, preferred: str | None = None
) -> WitnessReport:
    """Search for a pairing witnessing ``axiom`` between ``x`` and ``y``.

    Periodic inputs are first tried with pairings that never cross the
    window of one aligned period (after the preperiod); success is exact.
    Otherwise the first ``depth`` coordinates are matched.  Any returned
    pairing passes :func:`validate`.  Failure only means no witness exists
    within the searched window.
    """
    axiom = axiom.upper()
    if axiom not in EQUITY_AXIOMS:
        raise ValueError(f"find_witness handles {EQUITY_AXIOMS}, not {axiom}")
    if depth < 1:
        raise ValueError("depth must be positive")
    directions = [preferred] if preferred else ["x", "y"]
    xa, ya = _comparable(x, y)

    if xa.periodic:
        report = _periodic_search(xa, ya, axiom, directions)
        if report is not None:
            return report
        if axiom == "IE" and difference_set(xa, ya).is_finite():
            return WitnessReport(axiom, Status.NO_WITNESS_TO_DEPTH, depth=depth,
                                 reason="finitely many coordinates differ")
        if axiom in _SINGLE:
            return WitnessReport(axiom, Status.NO_WITNESS_TO_DEPTH, depth=depth,
                                 reason="no single nested pair")
    T = depth
    if not xa.periodic:
        if T > len(xa.pre):
            raise OutOfDepth(f"search depth {T} exceeds stream depth {len(xa.pre)}")
    xs = {t: coordinate(xa, t) for t in range(1, T + 1)}
    ys = {t: coordinate(ya, t) for t in range(1, T + 1)}
    found = _search_lists(xs, ys, range(1, T + 1), axiom, directions)
    if found is None:
        return WitnessReport(axiom, Status.NO_WITNESS_TO_DEPTH, depth=T, reason="no perfect matching of the difference set")
    _, pairs = found
    alpha = PairingFunction(tuple(pairs))
    tx = Stream.truncated([xs[t] for t in range(1, T + 1)])
    ty = Stream.truncated([ys[t] for t in range(1, T + 1)])
    report = validate(alpha, tx, ty, axiom)
    assert report.verified, report.reason
    return report


def _periodic_search(xa: Stream, ya: Stream, axiom: str, directions: Sequence[str]) -> WitnessReport | None:
    xa, ya = align(xa, ya)
    n_pre, n_per = len(xa.pre), len(xa.per)
    for shift in (0, 1):
        offset = n_pre + shift * n_per
        for mult in (1, 2):
            width = mult * n_per
            xs = {t: coordinate(xa, t) for t in range(1, offset + width + 1)}
            ys = {t: coordinate(ya, t) for t in range(1, offset + width + 1)}
            window = range(offset + 1, offset + width + 1)
            window_diff = [t for t in window if xs[t] != ys[t]]
            prefix = range(1, offset + 1)
            prefix_diff = [t for t in prefix if xs[t] != ys[t]]
            if axiom == "WE" and (len(window_diff) < width or len(prefix_diff) < offset):
                return None
            if axiom == "IE" and not window_diff:
                return None
            if axiom in _SINGLE and (window_diff or len(prefix_diff) != 2):
                return None
            for who in directions:
                pre_pairs = _match_block(prefix_diff, xs, ys, who, axiom in _TRANSFER)
                if pre_pairs is None:
                    continue
                win_pairs = _match_block(window_diff, xs, ys, who, axiom in _TRANSFER)
                if win_pairs is None:
                    continue
                if not pre_pairs and not win_pairs:
                    continue
                alpha = PairingFunction(tuple(pre_pairs), tuple(win_pairs), width if win_pairs else 0)
                report = validate(alpha, xa, ya, axiom, preferred=who)
                assert report.verified, report.reason
                return report
    return None


# -- exhaustive oracle --------------------------------------------------------

def brute_force_witness(
    xs: Sequence[Any], ys: Sequence[Any], axiom: str = "GE"
) -> tuple[str, PairingFunction] | None:
    """Exhaustive search over partial involutions of ``{1..n}`` (n <= 10).

    Testing oracle for :func:`find_witness`; shares no code with it.  Returns
    ``(preferred, pairing)`` for some valid witness or ``None``.
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("lists must have equal length")
    if n > 10:
        raise SizeLimit(f"brute force is limited to n <= 10, got {n}")
    axiom = axiom.upper()
    X = [Fraction(v) for v in xs]
    Y = [Fraction(v) for v in ys]

    def link_ok(i: int, j: int, better: list[Fraction], worse: list[Fraction]) -> bool:
        for lo, hi in ((i, j), (j, i)):
            if worse[lo] < better[lo] < better[hi] < worse[hi]:
                if axiom in ("GPD", "PD") and better[lo] - worse[lo] != worse[hi] - better[hi]:
                    continue
                return True
        return False

    def unpaired_ok(k: int) -> bool:
        return axiom != "WE" and X[k] == Y[k]

    for name, better, worse in (("x", X, Y), ("y", Y, X)):
        partner = [-1] * n

        def extend(k: int) -> bool:
            while k < n and partner[k] != -1:
                k += 1
            if k == n:
                links = sum(1 for t in range(n) if partner[t] > t)
                if links == 0:
                    return False
                if axiom in ("SE", "PD") and links != 1:
                    return False
                return True
            if unpaired_ok(k):
                partner[k] = -2
                if extend(k + 1):
                    return True
                partner[k] = -1
            for m in range(k + 1, n):
                if partner[m] == -1 and link_ok(k, m, better, worse):
                    partner[k], partner[m] = m, k
                    if extend(k + 1):
                        return True
                    partner[k] = partner[m] = -1
            return False

        if extend(0):
            pairs = tuple((t + 1, partner[t] + 1) for t in range(n) if partner[t] > t)
            return name, PairingFunction(pairs)
    return None
