"""Named example streams and the witness chains behind the impossibility results.

Every factory is deterministic.  Verification drivers return a
:class:`Transcript`; each step is either a pairing check (``validate``), a
permutation or dominance check, or a symbolic check for index classes whose
partners lie beyond the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Any, Callable, Sequence

from .errors import BadParameter, DepthTooSmall, UnknownName
from .pairing import PairingFunction, WitnessReport, validate
from .streams import Stream, dominates, format_rational, is_finite_permutation, rational


# -- rational enumeration ------------------------------------------------------

@lru_cache(maxsize=None)
def _rationals_upto_denominator(dmax: int) -> tuple[Fraction, ...]:
    out = []
    for d in range(2, dmax + 1):
        out.extend(Fraction(n, d) for n in range(1, d) if gcd(n, d) == 1)
    return tuple(out)


def rationals(count: int) -> tuple[Fraction, ...]:
    """``q_1 .. q_count``: denominators 2, 3, ... and numerators ascending."""
    d = 2
    while True:
        qs = _rationals_upto_denominator(d)
        if len(qs) >= count:
            return qs[:count]
        d = max(d + 1, int(d * 1.5))


def enumerate_rationals(k: int) -> Fraction:
    if k < 1:
        raise BadParameter("the enumeration is 1-based")
    return rationals(k)[-1]


def rational_index(q: Any) -> int:
    """Position of ``q`` in the enumeration."""
    q = rational(q)
    if not 0 < q < 1:
        raise BadParameter(f"{q} is not in (0, 1)")
    d = q.denominator
    before = sum(1 for dd in range(2, d) for n in range(1, dd) if gcd(n, dd) == 1)
    return before + sum(1 for n in range(1, q.numerator + 1) if gcd(n, d) == 1)


def _check_r(r: Any, name: str = "r") -> Fraction:
    r = rational(r)
    if not 0 < r < 1:
        raise BadParameter(f"{name} must lie in (0, 1), got {r}")
    return r


@dataclass(frozen=True)
class IndexPartition:
    """``L(r)``, ``U(r)`` on ``[1, T]`` and the factorial sets inside ``[1, T]``."""

    r: Fraction
    T: int
    L: frozenset[int]
    U: frozenset[int]
    bold_L: frozenset[int]
    bold_U: frozenset[int]
    bold_I: frozenset[int]


def factorial_blocks(T: int) -> list[tuple[int, int, int]]:
    """``(n, 2*n!+1, 2*n!+2)`` for every ``n`` whose block starts inside ``[1, T]``."""
    out = []
    n = 1
    while 2 * factorial(n) + 1 <= T:
        out.append((n, 2 * factorial(n) + 1, 2 * factorial(n) + 2))
        n += 1
    return out


def partition(r: Any, T: int) -> IndexPartition:
    r = _check_r(r)
    if T < 1:
        raise BadParameter("T must be positive")
    qs = rationals(T)
    L = frozenset(n for n in range(1, T + 1) if qs[n - 1] < r)
    U = frozenset(range(1, T + 1)) - L
    bL: set[int] = set()
    bU: set[int] = set()
    for n, i, j in factorial_blocks(T):
        target = bL if qs[n - 1] < r else bU
        target.update(t for t in (i, j) if t <= T)
    bI = frozenset(range(1, T + 1)) - bL - bU
    return IndexPartition(r, T, L, U, frozenset(bL), frozenset(bU), bI)


# -- transcripts ----------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    label: str
    verified: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"label": self.label, "verified": self.verified, **self.detail}


@dataclass
class Transcript:
    name: str
    params: dict
    steps: list[Step] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return bool(self.steps) and all(s.verified for s in self.steps)

    def witness(self, label: str, report: WitnessReport, expect: str) -> WitnessReport:
        ok = report.verified and report.preferred == expect
        detail = report.to_json()
        detail["expected_preferred"] = expect
        self.steps.append(Step(label, ok, detail))
        return report

    def check(self, label: str, ok: bool, **detail: Any) -> bool:
        self.steps.append(Step(label, bool(ok), detail))
        return bool(ok)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "verified": self.verified,
            "flags": self.flags,
            "steps": [s.to_json() for s in self.steps],
        }


@dataclass(frozen=True)
class ClassPairing:
    """An order-preserving bijection between two infinite index classes.

    Only the pairs inside the truncation can be checked concretely.  The rest
    are covered by checking that each class carries one constant value in
    each stream and that the four class values nest.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def materialized(self) -> list[tuple[int, int]]:
        return list(zip(self.left, self.right))

    def open_indices(self) -> list[int]:
        m = min(len(self.left), len(self.right))
        return list(self.left[m:]) + list(self.right[m:])

    def symbolic_check(self, worse: Stream, better: Stream) -> tuple[bool, dict]:
        def const(stream: Stream, idx: Sequence[int]) -> set[Fraction]:
            return {stream[t] for t in idx}

        vals = {
            "worse_left": const(worse, self.left), "better_left": const(better, self.left),
            "worse_right": const(worse, self.right), "better_right": const(better, self.right),
        }
        if not all(len(v) == 1 for v in vals.values()) or not self.left or not self.right:
            return False, {"reason": "classes are empty or not constant"}
        wl, bl, wr, br = (next(iter(vals[k])) for k in ("worse_left", "better_left", "worse_right", "better_right"))
        nested = (wl < bl < br < wr) or (wr < br < bl < wl)
        return nested, {"class_values": [format_rational(v) for v in (wl, bl, br, wr)]}


def _blocks(blocks: Sequence[tuple[Fraction, Fraction]]) -> list[Fraction]:
    out: list[Fraction] = []
    for lo, hi in blocks:
        out += [lo, hi]
    return out


def _values(values: Sequence[Any], n: int) -> tuple[Fraction, ...]:
    vals = tuple(rational(v) for v in values)
    if len(vals) != n or any(a >= b for a, b in zip(vals, vals[1:])):
        raise BadParameter(f"need {n} strictly increasing values")
    return vals


# -- first impossibility: anonymity ------------------------------------------------

def decreasing_sequence(r: Fraction, blocks: int) -> list[int]:
    """Greedy indices ``n_1 < n_2 < ...`` with ``q`` strictly decreasing to ``r``."""
    qs = rationals(blocks)
    seq: list[int] = []
    bound = Fraction(1)
    for n in range(1, blocks + 1):
        if r < qs[n - 1] < bound:
            seq.append(n)
            bound = qs[n - 1]
    return seq


@dataclass(frozen=True)
class Thm1Family:
    r: Fraction
    T: int
    x: Stream
    y: Stream
    n_seq: tuple[int, ...]
    L: frozenset[int]

    @property
    def alpha(self) -> PairingFunction:
        return PairingFunction(tuple((2 * n - 1, 2 * n) for n in self.n_seq))


def thm1_family(r: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3)) -> Thm1Family:
    r = _check_r(r)
    a, b, c, d = _values(values, 4)
    if T < 2 or T % 2:
        raise BadParameter("T must be a positive even number")
    N = T // 2
    part = partition(r, N)
    n_seq = decreasing_sequence(r, N)
    if not n_seq:
        raise DepthTooSmall(f"no rational in ({r}, 1) among the first {N}")
    xb = [(b, c) if n in part.L else (a, d) for n in range(1, N + 1)]
    yb = list(xb)
    for n in n_seq:
        yb[n - 1] = (b, c)
    tag = f"thm1 r={r}"
    x = Stream.truncated(_blocks(xb), f"{tag} x")
    y = Stream.truncated(_blocks(yb), f"{tag} y")
    return Thm1Family(r, T, x, y, tuple(n_seq), part.L)


@dataclass(frozen=True)
class Thm1Swap:
    y_prime: Stream
    K: int
    swapped: tuple[tuple[int, int], ...]  # (n_k, v_k) block pairs
    remaining: tuple[int, ...]  # (a, d) blocks that x(s) turns into (b, c)


def thm1_swap(fam: Thm1Family, s: Any) -> Thm1Swap:
    """Exchange the ``K`` blocks with ``q >= s`` against the earliest eligible
    ``(a, d)`` blocks, those ``v > n_K`` with ``r <= q_v < s`` outside the sequence."""
    s = _check_r(s, "s")
    if not fam.r < s:
        raise BadParameter("need r < s")
    N = fam.T // 2
    qs = rationals(N)
    ks = [n for n in fam.n_seq if qs[n - 1] >= s]
    K = len(ks)
    nK = ks[-1] if ks else 0
    in_seq = set(fam.n_seq)
    eligible = [v for v in range(nK + 1, N + 1) if fam.r <= qs[v - 1] < s and v not in in_seq]
    if len(eligible) <= K:
        raise DepthTooSmall(f"depth {fam.T} holds {len(eligible)} eligible blocks, need more than K={K}")
    chosen = eligible[:K]
    vals = list(fam.y.pre)
    for n, v in zip(ks, chosen):
        for off in (2, 1):
            vals[2 * n - off], vals[2 * v - off] = vals[2 * v - off], vals[2 * n - off]
    y_prime = Stream.truncated(vals, f"thm1 r={fam.r} s={s} y'")
    # every (a, d) block with r <= q < s that was not swapped, including ones before n_K
    remaining = tuple(
        v for v in range(1, N + 1) if fam.r <= qs[v - 1] < s and v not in in_seq and v not in chosen
    )
    return Thm1Swap(y_prime, K, tuple(zip(ks, chosen)), remaining)


def verify_thm1(r: Any, s: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3)) -> Transcript:
    r, s = _check_r(r), _check_r(s, "s")
    tr = Transcript("thm1", {"r": str(r), "s": str(s), "depth": T, "values": [str(v) for v in values]})
    fr = thm1_family(r, T, values)
    fs = thm1_family(s, T, values)
    tr.witness("x(r) < y(r) by IE", validate(fr.alpha, fr.x, fr.y, "IE"), "y")
    sw = thm1_swap(fr, s)
    tr.check("y(r) ~ y' by AN", is_finite_permutation(fr.y, sw.y_prime), K=sw.K,
             swapped=[list(p) for p in sw.swapped])
    beta = PairingFunction(tuple((2 * v - 1, 2 * v) for v in sw.remaining))
    tr.witness("y' < x(s) by IE", validate(beta, sw.y_prime, fs.x, "IE"), "y")
    return tr


# -- factorial constructions -----------------------------------------------------

@dataclass(frozen=True)
class FactorialFamily:
    r: Fraction
    T: int
    x: Stream
    y: Stream
    part: IndexPartition

    @property
    def alpha(self) -> PairingFunction:
        """Consecutive odd/even pairs inside ``I``."""
        I = self.part.bold_I
        return PairingFunction(tuple((t, t + 1) for t in sorted(I) if t % 2 and t + 1 in I))


def _factorial_family(r: Any, T: int, vals: tuple[Fraction, ...], rule: Callable[[int, str], Fraction], tag: str):
    r = _check_r(r)
    if T < 2 or T % 2:
        raise BadParameter("T must be a positive even number")
    part = partition(r, T)
    if not (part.bold_L or part.bold_U):
        raise DepthTooSmall("no factorial block fits inside the depth")
    xs, ys = [], []
    for t in range(1, T + 1):
        cls = "I" if t in part.bold_I else ("L" if t in part.bold_L else "U")
        xv = rule(t, cls)
        xs.append(xv)
        ys.append(xv if cls != "I" else (vals[3] if t % 2 else vals[4]))
    return FactorialFamily(r, T, Stream.truncated(xs, f"{tag} r={r} x"), Stream.truncated(ys, f"{tag} r={r} y"), part)


def thm2_family(r: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3, 4, 5)) -> FactorialFamily:
    a, b, c, d, e, f = vals = _values(values, 6)

    def rule(t: int, cls: str) -> Fraction:
        if cls == "I":
            return c if t % 2 else f
        return a if cls == "U" else b

    return _factorial_family(r, T, vals, rule, "thm2")


def thm3_family(r: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3, 4, 5, 6, 7)) -> FactorialFamily:
    a, b, c, d, e, f, g, h = vals = _values(values, 8)

    def rule(t: int, cls: str) -> Fraction:
        if cls == "I":
            return c if t % 2 else f
        if cls == "U":
            return a if t % 2 else h
        return b if t % 2 else g

    return _factorial_family(r, T, vals, rule, "thm3")


def _cross(fr: FactorialFamily, fs: FactorialFamily, parity: int, right_parity: int | None) -> ClassPairing:
    """``I`` indices of ``parity`` against ``L(s)`` minus ``L(r)`` (of ``right_parity`` if given)."""
    left = tuple(t for t in sorted(fr.part.bold_I) if t % 2 == parity)
    right = tuple(
        t for t in sorted(fs.part.bold_L & fr.part.bold_U) if right_parity is None or t % 2 == right_parity
    )
    if not right:
        raise DepthTooSmall(
            f"no factorial block with q in [{fr.r}, {fs.r}) fits inside depth {fr.T}"
        )
    return ClassPairing(left, right)


def _symbolic(tr: Transcript, label: str, cp: ClassPairing, worse: Stream, better: Stream, r: Fraction, s: Fraction):
    ok, detail = cp.symbolic_check(worse, better)
    detail.update({
        "open_indices": len(cp.open_indices()),
        "right_class_infinite": f"one block per rational in [{r}, {s})",
    })
    tr.check(label, ok and r < s, **detail)


def verify_thm2(r: Any, s: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3, 4, 5)) -> Transcript:
    r, s = _check_r(r), _check_r(s, "s")
    if not r < s:
        raise BadParameter("need r < s")
    tr = Transcript("thm2", {"r": str(r), "s": str(s), "depth": T, "values": [str(v) for v in values]})
    fr, fs = thm2_family(r, T, values), thm2_family(s, T, values)
    tr.witness("x(r) < y(r) by IE", validate(fr.alpha, fr.x, fr.y, "IE"), "y")
    # z: x(s) lowered to y(r) on the even part of I, so y(r) < z by IE and z <= x(s) by M
    e = _values(values, 6)[4]
    z = Stream.truncated(
        [e if (t in fr.part.bold_I and t % 2 == 0) else fs.x[t] for t in range(1, T + 1)], "thm2 z"
    )
    cp = _cross(fr, fs, 1, None)
    report = validate(PairingFunction(tuple(cp.materialized())), fr.y, z, "IE", open_indices=cp.open_indices())
    tr.witness("y(r) < z by IE", report, "y")
    _symbolic(tr, "deferred pairs I-odd to L(s)-U(r)", cp, fr.y, z, r, s)
    tr.check("z <= x(s) by M", dominates(fs.x, z))
    return tr


def verify_thm3(r: Any, s: Any, T: int, values: Sequence[Any] = (0, 1, 2, 3, 4, 5, 6, 7)) -> Transcript:
    r, s = _check_r(r), _check_r(s, "s")
    if not r < s:
        raise BadParameter("need r < s")
    tr = Transcript("thm3", {"r": str(r), "s": str(s), "depth": T, "values": [str(v) for v in values]})
    fr, fs = thm3_family(r, T, values), thm3_family(s, T, values)
    tr.witness("x(r) < y(r) by IE", validate(fr.alpha, fr.x, fr.y, "IE"), "y")
    odd, even = _cross(fr, fs, 1, 1), _cross(fr, fs, 0, 0)
    merged = PairingFunction(tuple(odd.materialized() + even.materialized()))
    report = validate(merged, fr.y, fs.x, "IE", open_indices=odd.open_indices() + even.open_indices())
    tr.witness("y(r) < x(s) by IE (odd and even pairings merged)", report, "y")
    _symbolic(tr, "deferred odd pairs", odd, fr.y, fs.x, r, s)
    _symbolic(tr, "deferred even pairs", even, fr.y, fs.x, r, s)
    return tr


# -- named examples ----------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    pairing: str
    axiom: str
    worse: str
    better: str


@dataclass(frozen=True)
class ExampleFixture:
    name: str
    streams: dict[str, Stream]
    pairings: dict[str, PairingFunction]
    claims: tuple[Claim, ...]
    inconsistent: bool = False


def _ex1(depth: int) -> ExampleFixture:
    xs, ys = [], []
    for k in range(depth // 4 + 1):
        xs += [4 * k + 1, 4 * k + 4, -4 * k - 1, -4 * k - 4]
        ys += [4 * k + 2, 4 * k + 3, -4 * k - 2, -4 * k - 3]
    x = Stream.truncated(xs[:depth], "ex1 x")
    y = Stream.truncated(ys[:depth], "ex1 y")
    alpha = PairingFunction((), ((1, 2),), 2)
    beta = PairingFunction(((1, 3),), ((2, 5),), 2)
    claims = (Claim("alpha", "WE", "x", "y"), Claim("beta", "WE", "y", "x"))
    return ExampleFixture("ex1", {"x": x, "y": y}, {"alpha": alpha, "beta": beta}, claims, True)


def _ex2(depth: int) -> ExampleFixture:
    xs, ys = [], []
    for k in range(depth // 2 + 1):
        xs += [-4 * k - 2, -4 * k - 5]
        ys += [-4 * k - 3, -4 * k - 4]
    x = Stream.truncated(xs[:depth], "ex2 x")
    y = Stream.truncated(ys[:depth], "ex2 y")
    yp = Stream.truncated([-1] + ys[1:depth], "ex2 y'")
    alpha = PairingFunction((), ((1, 2),), 2)
    beta = PairingFunction(((1, 3),), ((2, 5),), 2)
    claims = (Claim("alpha", "WE", "x", "y"), Claim("beta", "WE", "y_prime", "x"))
    return ExampleFixture("ex2", {"x": x, "y": y, "y_prime": yp}, {"alpha": alpha, "beta": beta}, claims, True)


def _intro(depth: int) -> ExampleFixture:
    F = Fraction
    x = Stream.ep([], [1, 0, 1], "intro x")
    z = Stream.ep([F("0.75"), F("0.25"), 1, F("0.6"), F("0.1"), 1], [1, 0, 1], "intro z")
    zp = Stream.ep([F("0.75"), F("0.25"), 1], [F("0.6"), F("0.1"), 1], "intro z'")
    blocks = PairingFunction((), ((7, 8),), 3)
    both = PairingFunction(((1, 2),), ((4, 5),), 3)
    return ExampleFixture(
        "intro",
        {"x": x, "z": z, "z_prime": zp},
        {"first_two": PairingFunction(((1, 2), (4, 5))), "blocks": blocks, "all": both},
        (Claim("first_two", "GE", "x", "z"), Claim("blocks", "IE", "z", "z_prime"), Claim("all", "IE", "x", "z_prime")),
    )


def _spread_cycle(depth: int) -> ExampleFixture:
    a, b, c, d, e = range(5)
    x = Stream.ep([], [b, c, e], "spread_cycle x")
    y = Stream.ep([], [a, d, e], "spread_cycle y")
    alpha = PairingFunction((), ((1, 2),), 3)
    return ExampleFixture("spread_cycle", {"x": x, "y": y}, {"alpha": alpha},
                          (Claim("alpha", "GE", "y", "x"), Claim("alpha", "IE", "y", "x")))


EXAMPLES = {"ex1": _ex1, "ex2": _ex2, "intro": _intro, "spread_cycle": _spread_cycle}


def example_streams(name: str, depth: int = 400) -> ExampleFixture:
    try:
        factory = EXAMPLES[name]
    except KeyError:
        raise UnknownName(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    if depth < 8:
        raise DepthTooSmall("examples need depth >= 8")
    return factory(depth)


def verify_example(name: str, depth: int = 400) -> Transcript:
    fx = example_streams(name, depth)
    tr = Transcript(name, {"depth": depth})
    for cl in fx.claims:
        report = validate(fx.pairings[cl.pairing], fx.streams[cl.worse], fx.streams[cl.better], cl.axiom)
        tr.witness(f"{cl.worse} < {cl.better} by {cl.axiom} via {cl.pairing}", report, "y")
    if name == "ex2":
        tr.check("y_prime dominates y", dominates(fx.streams["y_prime"], fx.streams["y"]))
    if fx.inconsistent and tr.verified:
        tr.flags.append("relation inconsistent on this domain")
    return tr
