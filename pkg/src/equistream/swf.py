"""Exact evaluation of explicit social welfare functions on periodic streams."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .domains import UtilityDomain
from .errors import BadParameter, DomainViolation, NotPeriodic, UnboundedDomain, UnknownName
from .streams import PeriodicIndexSet, Stream, rational


def _sorted_distinct(values: Iterable[Any], size: int, label: str) -> tuple[Fraction, ...]:
    vals = tuple(rational(v) for v in values)
    if len(vals) != size:
        raise BadParameter(f"{label} needs exactly {size} values, got {len(vals)}")
    if any(a >= b for a, b in zip(vals, vals[1:])):
        raise BadParameter(f"{label} values must be strictly increasing")
    return vals


@dataclass(frozen=True)
class FiveValueDomain:
    """Values a < b < c < d < e."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _sorted_distinct(self.values, 5, "FiveValueDomain"))

    def __getattr__(self, name: str) -> Fraction:
        if len(name) == 1 and "a" <= name <= "e":
            return self.values["abcde".index(name)]
        raise AttributeError(name)


@dataclass(frozen=True)
class SevenValueDomain:
    """Values a < b < ... < g."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _sorted_distinct(self.values, 7, "SevenValueDomain"))

    def __getattr__(self, name: str) -> Fraction:
        if len(name) == 1 and "a" <= name <= "g":
            return self.values["abcdefg".index(name)]
        raise AttributeError(name)


def periodic_base_sum(S: PeriodicIndexSet, base: int) -> Fraction:
    """Exact value of the sum of ``base**-n`` over ``n`` in ``S``."""
    if base < 2:
        raise BadParameter("base must be at least 2")
    total = sum((Fraction(1, base**n) for n in S.explicit), Fraction(0))
    if S.residues:
        p = S.p
        ratio = 1 - Fraction(1, base**p)
        for r in S.residues:
            t0 = S.offset + 1 + (r - S.offset - 1) % p
            total += Fraction(1, base**t0) / ratio
    return total


def _index_set(x: Stream, targets: set[Fraction]) -> PeriodicIndexSet:
    pre = len(x.pre)
    p = len(x.per)
    explicit = {t for t in range(1, pre + 1) if x.pre[t - 1] in targets}
    residues = {(pre + 1 + k) % p for k in range(p) if x.per[k] in targets}
    return PeriodicIndexSet(frozenset(explicit), frozenset(residues), pre, p)


def _require_periodic(x: Stream, what: str) -> None:
    if not x.periodic:
        raise NotPeriodic(f"{what} needs an eventually periodic stream")


def _check_values(x: Stream, allowed: Sequence[Fraction]) -> None:
    bad = sorted(x.values() - set(allowed))
    if bad:
        raise DomainViolation(f"value {bad[0]} is outside the domain")


def _as_domain(Y: Any, cls: type) -> Any:
    return Y if isinstance(Y, cls) else cls(tuple(Y))


def w_prop1(x: Stream, Y: FiveValueDomain | Sequence[Any]) -> Fraction:
    """Penalise lowest values by base-2 weights and second lowest by base 3;
    with neither present, the base-2 discounted sum of the stream.

    Monotonicity and equity also need ``c >= 0`` (the discounted-sum branch
    must stay non-negative); the value is computed for any five values.
    """
    _require_periodic(x, "w_prop1")
    D = _as_domain(Y, FiveValueDomain)
    _check_values(x, D.values)
    N = _index_set(x, {D.a})
    M = _index_set(x, {D.b})
    if not (N.is_empty() and M.is_empty()):
        return -periodic_base_sum(N, 2) - periodic_base_sum(M, 3)
    return sum((v * periodic_base_sum(_index_set(x, {v}), 2) for v in x.values()), Fraction(0))


def w_prop2(x: Stream, Y: SevenValueDomain | Sequence[Any]) -> Fraction:
    _require_periodic(x, "w_prop2")
    D = _as_domain(Y, SevenValueDomain)
    _check_values(x, D.values)
    N = _index_set(x, {D.a, D.g})
    M = _index_set(x, {D.b, D.f})
    return -periodic_base_sum(N, 2) - periodic_base_sum(M, 3)


def w_min(x: Stream) -> Fraction:
    _require_periodic(x, "w_min")
    return min(x.values())


def w_rho_inf(x: Stream, Y: UtilityDomain, rho: Any = Fraction(1, 2)) -> Fraction:
    """``rho * min|x_n - inf Y| + (1 - rho) * min|sup Y - x_n|``."""
    rho = rational(rho)
    if not 0 < rho < 1:
        raise BadParameter(f"rho must lie strictly between 0 and 1, got {rho}")
    _require_periodic(x, "w_rho_inf")
    lo, hi = Y.inf, Y.sup
    if not (isinstance(lo, Fraction) and isinstance(hi, Fraction)):
        raise UnboundedDomain("the domain needs a finite infimum and supremum")
    vals = x.values()
    outside = [v for v in sorted(vals) if v not in Y]
    if outside:
        raise DomainViolation(f"value {outside[0]} is outside the domain")
    return rho * min(v - lo for v in vals) + (1 - rho) * min(hi - v for v in vals)


SWF_NAMES = ("prop1", "prop2", "min", "rhoinf")


def make_swf(name: str, domain: Any = None, rho: Any = Fraction(1, 2)):
    """Return a one-argument callable for the named welfare function."""
    if name == "prop1":
        D = _as_domain(domain, FiveValueDomain)
        return lambda x: w_prop1(x, D)
    if name == "prop2":
        D = _as_domain(domain, SevenValueDomain)
        return lambda x: w_prop2(x, D)
    if name == "min":
        return w_min
    if name == "rhoinf":
        if not isinstance(domain, UtilityDomain):
            domain = UtilityDomain.of(*domain)
        return lambda x: w_rho_inf(x, domain, rho)
    raise UnknownName(f"unknown welfare function {name!r}; choose from {SWF_NAMES}")
