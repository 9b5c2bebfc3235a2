"""Finite presentations of infinite utility streams.

A stream is either *eventually periodic* (a preperiod followed by a
repeating period) or a *truncation* holding exactly ``depth`` coordinates.
Coordinates are 1-based, values are exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .errors import (
    DepthMismatch,
    DescriptorError,
    MissingValue,
    NotMonotone,
    NotPeriodic,
    OutOfDepth,
)

Rational = Fraction


def rational(value: Any) -> Fraction:
    """Parse ``value`` into an exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-17/24"`` or
    ``"0.75"``.  Floats are refused because they carry binary rounding.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not utilities")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class PeriodicIndexSet:
    """Subset of the positive integers: a finite part plus residues mod ``p``.

    ``t`` is a member iff ``t in explicit`` or ``t > offset and t % p in
    residues``.  Explicit members never exceed ``offset``.
    """

    explicit: frozenset[int] = frozenset()
    residues: frozenset[int] = frozenset()
    offset: int = 0
    p: int = 1

    def __post_init__(self) -> None:
        if self.p < 1 or self.offset < 0:
            raise ValueError("need p >= 1 and offset >= 0")
        object.__setattr__(self, "explicit", frozenset(self.explicit))
        object.__setattr__(self, "residues", frozenset(r % self.p for r in self.residues))
        if any(t < 1 or t > self.offset for t in self.explicit):
            raise ValueError("explicit members must lie in [1, offset]")

    @classmethod
    def finite(cls, members: Iterable[int]) -> "PeriodicIndexSet":
        members = frozenset(members)
        return cls(explicit=members, offset=max(members, default=0))

    @classmethod
    def everything(cls) -> "PeriodicIndexSet":
        return cls(residues=frozenset({0}), p=1)

    def __contains__(self, t: object) -> bool:
        if not isinstance(t, int) or t < 1:
            return False
        if t <= self.offset:
            return t in self.explicit
        return t % self.p in self.residues

    def is_finite(self) -> bool:
        return not self.residues

    def is_empty(self) -> bool:
        return not self.explicit and not self.residues

    def upto(self, n: int) -> list[int]:
        """Members in ``[1, n]``, ascending."""
        return [t for t in range(1, n + 1) if t in self]

    def horizon(self, other: "PeriodicIndexSet | None" = None) -> int:
        """A bound past which membership patterns of ``self`` (and ``other``) repeat."""
        if other is None:
            return self.offset + self.p
        return max(self.offset, other.offset) + lcm(self.p, other.p)

    def same_members(self, other: "PeriodicIndexSet") -> bool:
        n = self.horizon(other)
        return all((t in self) == (t in other) for t in range(1, n + 1))

    def first_difference(self, other: "PeriodicIndexSet") -> int | None:
        n = self.horizon(other)
        for t in range(1, n + 1):
            if (t in self) != (t in other):
                return t
        return None

    def to_json(self) -> dict:
        return {
            "explicit": sorted(self.explicit),
            "residues": sorted(self.residues),
            "offset": self.offset,
            "p": self.p,
        }


@dataclass(frozen=True)
class Stream:
    """An infinite utility stream given by finitely many data.

    ``per`` non-empty means eventually periodic: coordinate ``t`` is
    ``pre[t-1]`` for ``t <= len(pre)`` and cycles through ``per`` afterwards.
    Empty ``per`` means a truncation whose ``depth`` is ``len(pre)``.
    """

    pre: tuple[Fraction, ...]
    per: tuple[Fraction, ...] = ()
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pre", tuple(rational(v) for v in self.pre))
        object.__setattr__(self, "per", tuple(rational(v) for v in self.per))
        if not self.per and not self.pre:
            raise ValueError("a truncated stream needs at least one coordinate")

    @classmethod
    def ep(cls, pre: Iterable[Any], per: Iterable[Any], provenance: str | None = None) -> "Stream":
        per = tuple(per)
        if not per:
            raise ValueError("an eventually periodic stream needs a non-empty period")
        return cls(tuple(pre), per, provenance)

    @classmethod
    def constant(cls, value: Any) -> "Stream":
        return cls((), (value,))

    @classmethod
    def truncated(cls, values: Iterable[Any], provenance: str | None = None) -> "Stream":
        return cls(tuple(values), (), provenance)

    @property
    def periodic(self) -> bool:
        return bool(self.per)

    @property
    def depth(self) -> int | None:
        return None if self.per else len(self.pre)

    def __getitem__(self, t: int) -> Fraction:
        return coordinate(self, t)

    def prefix(self, n: int) -> list[Fraction]:
        """The first ``n`` coordinates."""
        if not self.per and n > len(self.pre):
            raise OutOfDepth(f"prefix of length {n} requested from a stream of depth {len(self.pre)}")
        return [coordinate(self, t) for t in range(1, n + 1)]

    def values(self) -> frozenset[Fraction]:
        """Every value the stream takes (exact for periodic streams)."""
        return frozenset(self.pre) | frozenset(self.per)

    def with_provenance(self, tag: str) -> "Stream":
        return Stream(self.pre, self.per, tag)


def coordinate(x: Stream, t: int) -> Fraction:
    if t < 1:
        raise IndexError("coordinates are 1-based")
    n_pre = len(x.pre)
    if t <= n_pre:
        return x.pre[t - 1]
    if not x.per:
        raise OutOfDepth(f"coordinate {t} beyond depth {n_pre}")
    return x.per[(t - n_pre - 1) % len(x.per)]


def reshape(x: Stream, n_pre: int, n_per: int) -> Stream:
    """Same stream with preperiod length ``n_pre`` and period length ``n_per``.

    ``n_pre`` must be at least ``len(x.pre)`` and ``n_per`` a multiple of
    ``len(x.per)``.
    """
    if not x.per:
        raise NotPeriodic("cannot reshape a truncated stream")
    if n_pre < len(x.pre) or n_per % len(x.per):
        raise ValueError("reshape may only lengthen the preperiod and multiply the period")
    pre = [coordinate(x, t) for t in range(1, n_pre + 1)]
    per = [coordinate(x, t) for t in range(n_pre + 1, n_pre + n_per + 1)]
    return Stream(tuple(pre), tuple(per), x.provenance)


def align(x: Stream, y: Stream) -> tuple[Stream, Stream]:
    if not (x.per and y.per):
        raise NotPeriodic("align needs two eventually periodic streams")
    n_pre = max(len(x.pre), len(y.pre))
    n_per = lcm(len(x.per), len(y.per))
    return reshape(x, n_pre, n_per), reshape(y, n_pre, n_per)


def truncate(x: Stream, depth: int) -> Stream:
    return Stream.truncated(x.prefix(depth), x.provenance)


def _comparable(x: Stream, y: Stream) -> tuple[Stream, Stream]:
    if x.per and y.per:
        return align(x, y)
    if x.per or y.per:
        raise NotPeriodic("cannot compare a periodic stream with a truncation; truncate it first")
    if len(x.pre) != len(y.pre):
        raise DepthMismatch(f"depths {len(x.pre)} and {len(y.pre)} differ")
    return x, y


def _window(x: Stream) -> list[Fraction]:
    """Preperiod plus one period: exhaustive for aligned periodic streams."""
    return list(x.pre) + list(x.per)


def difference_set(x: Stream, y: Stream) -> PeriodicIndexSet:
    xa, ya = _comparable(x, y)
    n_pre = len(xa.pre)
    explicit = {t for t in range(1, n_pre + 1) if xa.pre[t - 1] != ya.pre[t - 1]}
    if not xa.per:
        return PeriodicIndexSet(explicit=frozenset(explicit), offset=n_pre)
    p = len(xa.per)
    residues = {
        (n_pre + k + 1) % p for k in range(p) if xa.per[k] != ya.per[k]
    }
    return PeriodicIndexSet(frozenset(explicit), frozenset(residues), n_pre, p)


def is_finite_permutation(x: Stream, y: Stream) -> bool:
    xa, ya = _comparable(x, y)
    d = difference_set(xa, ya)
    if not d.is_finite():
        return False
    idx = sorted(d.explicit)
    return Counter(xa.pre[t - 1] for t in idx) == Counter(ya.pre[t - 1] for t in idx)


def dominates(x: Stream, y: Stream) -> bool:
    """``x_t >= y_t`` for every coordinate."""
    xa, ya = _comparable(x, y)
    return all(a >= b for a, b in zip(_window(xa), _window(ya)))


def strictly_dominates_everywhere(x: Stream, y: Stream) -> bool:
    """``x_t > y_t`` for every coordinate (the ``x >> y`` relation)."""
    xa, ya = _comparable(x, y)
    return all(a > b for a, b in zip(_window(xa), _window(ya)))


def monotone_direction(table: Mapping[Fraction, Fraction]) -> int:
    """+1 if the table is strictly increasing, -1 if strictly decreasing."""
    keys = sorted(table)
    if len(keys) < 2:
        return 1
    images = [table[k] for k in keys]
    steps = [b - a for a, b in zip(images, images[1:])]
    if all(s > 0 for s in steps):
        return 1
    if all(s < 0 for s in steps):
        return -1
    raise NotMonotone("table is not strictly monotone on its keys")


def map_stream(f: Mapping[Any, Any], x: Stream) -> Stream:
    """Apply a strictly monotone finite table coordinate-wise."""
    table = {rational(k): rational(v) for k, v in f.items()}
    monotone_direction(table)
    missing = sorted(x.values() - table.keys())
    if missing:
        raise MissingValue(f"no table entry for {format_rational(missing[0])}")
    return Stream(
        tuple(table[v] for v in x.pre),
        tuple(table[v] for v in x.per),
        x.provenance,
    )


def swap(x: Stream, i: int, j: int) -> Stream:
    """Exchange coordinates ``i`` and ``j`` (a single transposition)."""
    hi = max(i, j)
    if x.per:
        n_pre = max(len(x.pre), hi)
        x = reshape(x, n_pre, len(x.per))
    elif hi > len(x.pre):
        raise OutOfDepth(f"coordinate {hi} beyond depth {len(x.pre)}")
    pre = list(x.pre)
    pre[i - 1], pre[j - 1] = pre[j - 1], pre[i - 1]
    return Stream(tuple(pre), x.per, x.provenance)


# -- JSON descriptors -------------------------------------------------------

def _read_values(raw: Any, where: str) -> list[Fraction]:
    if not isinstance(raw, list):
        raise DescriptorError(f"{where}: expected a list")
    out = []
    for k, v in enumerate(raw):
        try:
            out.append(rational(v))
        except (TypeError, ValueError) as exc:
            raise DescriptorError(f"{where}[{k}]: {exc}") from exc
    return out


def stream_from_json(obj: Any) -> Stream:
    if not isinstance(obj, dict):
        raise DescriptorError("stream: expected an object")
    kind = obj.get("kind")
    prov = obj.get("provenance")
    if kind == "ep":
        pre = _read_values(obj.get("pre", []), "pre")
        per = _read_values(obj.get("per"), "per")
        if not per:
            raise DescriptorError("per: must be non-empty for kind 'ep'")
        return Stream(tuple(pre), tuple(per), prov)
    if kind == "trunc":
        values = _read_values(obj.get("values"), "values")
        if not values:
            raise DescriptorError("values: must be non-empty for kind 'trunc'")
        return Stream.truncated(values, prov)
    raise DescriptorError(f"kind: expected 'ep' or 'trunc', got {kind!r}")


def stream_to_json(x: Stream) -> dict:
    if x.per:
        out: dict = {
            "kind": "ep",
            "pre": [format_rational(v) for v in x.pre],
            "per": [format_rational(v) for v in x.per],
        }
    else:
        out = {"kind": "trunc", "values": [format_rational(v) for v in x.pre]}
    if x.provenance:
        out["provenance"] = x.provenance
    return out


def iter_coordinates(x: Stream, start: int = 1) -> Iterator[Fraction]:
    t = start
    while True:
        if not x.per and t > len(x.pre):
            return
        yield coordinate(x, t)
        t += 1


def as_stream(values: Sequence[Any] | Stream) -> Stream:
    return values if isinstance(values, Stream) else Stream.truncated(values)
