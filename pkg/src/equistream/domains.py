"""Utility domains built from a finite set and closed-form monotone chains.

A chain is ``{f(n) : n = 1, 2, ...}`` for ``f`` of one of two shapes:

* affine in ``n``: ``A + B*n`` (unbounded, limit +/- infinity), or
* affine in ``1/(n+k)``: ``A + B/(n+k)`` (bounded, limit ``A``).

For a finite union of such chains, order-type questions reduce to the
chain directions and limits:

* an infinite strictly decreasing sequence in a finite union has an
  infinite subsequence inside one part, and only decreasing chains have
  one, so the domain is well-ordered iff no chain decreases;
* a subset of type ``sigma`` (order-isomorphic to the integers) needs a
  descending tail sitting entirely below an ascending tail, which for
  chain tails means ``inf(decreasing) < sup(increasing)``.

These decision procedures are only claimed for this presentation; they are
not a general order-type algorithm for arbitrary countable sets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import sympy

from .errors import DescriptorError
from .streams import format_rational, rational

_N = sympy.Symbol("n", positive=True, integer=True)


class Direction(enum.Enum):
    INCREASING = "inc"
    DECREASING = "dec"


class Form(enum.Enum):
    AFFINE = "affine"  # A + B*n
    RECIPROCAL = "reciprocal"  # A + B/(n+k)


# +/- infinity markers for limits; everything else is an exact Fraction.
POS_INF = math.inf
NEG_INF = -math.inf

Extended = Fraction | float


def _fraction(expr: sympy.Expr) -> Fraction:
    expr = sympy.nsimplify(expr)
    if not expr.is_Rational:
        raise DescriptorError(f"coefficient {expr} is not rational")
    return Fraction(int(expr.p), int(expr.q))


def _fmt_ext(v: Extended) -> str:
    if v == POS_INF:
        return "+inf"
    if v == NEG_INF:
        return "-inf"
    return format_rational(v)


def _read_ext(v: Any) -> Extended:
    if v in ("+inf", "inf", "+oo", "oo"):
        return POS_INF
    if v in ("-inf", "-oo"):
        return NEG_INF
    return rational(v)


@dataclass(frozen=True)
class MonotoneChain:
    """Strictly monotone sequence ``term(1), term(2), ...`` of rationals."""

    form: Form
    a: Fraction
    b: Fraction
    k: Fraction = Fraction(0)
    text: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.b == 0:
            raise DescriptorError("constant form: not an infinite chain")
        if self.form is Form.RECIPROCAL and self.k <= -1:
            raise DescriptorError("n + k must stay positive for n >= 1")

    @classmethod
    def parse(cls, text: str) -> "MonotoneChain":
        try:
            expr = sympy.sympify(text, locals={"n": _N}, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise DescriptorError(f"cannot parse chain form {text!r}") from exc
        if expr.free_symbols - {_N}:
            raise DescriptorError(f"form {text!r} may only use the variable n")
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        num_p = sympy.Poly(num, _N)
        den_p = sympy.Poly(den, _N)
        if den_p.degree() == 0 and num_p.degree() <= 1:
            c = _fraction(den_p.LC())
            coeffs = num_p.all_coeffs()
            b = _fraction(coeffs[0]) / c if num_p.degree() == 1 else Fraction(0)
            a = _fraction(coeffs[-1]) / c if num_p.degree() == 1 else _fraction(coeffs[0]) / c
            return cls(Form.AFFINE, a, b, text=text)
        if den_p.degree() == 1 and num_p.degree() <= 1:
            lead = _fraction(den_p.LC())
            k = _fraction(den_p.all_coeffs()[1]) / lead
            # num/den = A + B/(n+k) with A = num(n)/lead as n -> oo
            q, r = sympy.div(num_p, den_p)
            a = _fraction(q.as_expr())
            b = _fraction(r.as_expr()) / lead
            return cls(Form.RECIPROCAL, a, b, k, text=text)
        raise DescriptorError(f"form {text!r} is neither affine in n nor in 1/(n+k)")

    @property
    def direction(self) -> Direction:
        if self.form is Form.AFFINE:
            return Direction.INCREASING if self.b > 0 else Direction.DECREASING
        return Direction.DECREASING if self.b > 0 else Direction.INCREASING

    @property
    def limit(self) -> Extended:
        if self.form is Form.AFFINE:
            return POS_INF if self.b > 0 else NEG_INF
        return self.a

    def term(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError("chains are indexed from n = 1")
        if self.form is Form.AFFINE:
            return self.a + self.b * n
        return self.a + self.b / (n + self.k)

    def terms(self, count: int, start: int = 1) -> list[Fraction]:
        return [self.term(n) for n in range(start, start + count)]

    def first(self) -> Fraction:
        return self.term(1)

    def index_of(self, v: Fraction) -> int | None:
        """The ``n`` with ``term(n) == v``, if any."""
        if self.form is Form.AFFINE:
            n = (v - self.a) / self.b
        else:
            if v == self.a:
                return None
            n = self.b / (v - self.a) - self.k
        if n.denominator == 1 and n >= 1:
            return int(n)
        return None

    def __contains__(self, v: object) -> bool:
        return isinstance(v, (int, Fraction)) and self.index_of(Fraction(v)) is not None

    def mapped(self, slope: Fraction, shift: Fraction) -> "MonotoneChain":
        """Image under ``t -> slope*t + shift`` (still in the same family)."""
        if slope == 0:
            raise ValueError("slope must be non-zero")
        if self.form is Form.AFFINE:
            return MonotoneChain(Form.AFFINE, slope * self.a + shift, slope * self.b)
        return MonotoneChain(Form.RECIPROCAL, slope * self.a + shift, slope * self.b, self.k)

    def describe(self) -> str:
        if self.text:
            return self.text
        if self.form is Form.AFFINE:
            return f"{format_rational(self.a)} + ({format_rational(self.b)})*n"
        return f"{format_rational(self.a)} + ({format_rational(self.b)})/(n + {format_rational(self.k)})"

    def to_json(self) -> dict:
        return {
            "dir": self.direction.value,
            "form": self.describe(),
            "limit": _fmt_ext(self.limit),
        }


@dataclass(frozen=True)
class UtilityDomain:
    finite_part: tuple[Fraction, ...] = ()
    chains: tuple[MonotoneChain, ...] = ()

    def __post_init__(self) -> None:
        fin = tuple(sorted(set(rational(v) for v in self.finite_part)))
        object.__setattr__(self, "finite_part", fin)
        object.__setattr__(self, "chains", tuple(self.chains))
        if not fin and not self.chains:
            raise DescriptorError("a utility domain must be non-empty")
        for v in fin:
            for c in self.chains:
                if v in c:
                    raise DescriptorError(
                        f"finite element {format_rational(v)} also lies on chain {c.describe()}"
                    )

    @classmethod
    def of(cls, *values: Any) -> "UtilityDomain":
        return cls(tuple(rational(v) for v in values))

    @property
    def is_finite(self) -> bool:
        return not self.chains

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, (int, Fraction)):
            return False
        return v in self.finite_part or any(v in c for c in self.chains)

    def increasing(self) -> list[MonotoneChain]:
        return [c for c in self.chains if c.direction is Direction.INCREASING]

    def decreasing(self) -> list[MonotoneChain]:
        return [c for c in self.chains if c.direction is Direction.DECREASING]

    def _attained_low(self) -> list[Fraction]:
        return list(self.finite_part) + [c.first() for c in self.increasing()]

    def _attained_high(self) -> list[Fraction]:
        return list(self.finite_part) + [c.first() for c in self.decreasing()]

    @property
    def inf(self) -> Extended:
        cands: list[Extended] = list(self._attained_low())
        cands += [c.limit for c in self.decreasing()]
        return min(cands)

    @property
    def sup(self) -> Extended:
        cands: list[Extended] = list(self._attained_high())
        cands += [c.limit for c in self.increasing()]
        return max(cands)

    @property
    def minimum(self) -> Fraction | None:
        low = self._attained_low()
        if not low:
            return None
        m = min(low)
        return m if all(m <= c.limit for c in self.decreasing()) else None

    @property
    def maximum(self) -> Fraction | None:
        high = self._attained_high()
        if not high:
            return None
        m = max(high)
        return m if all(m >= c.limit for c in self.increasing()) else None

    def sample(self, per_chain: int = 8) -> list[Fraction]:
        """A finite, sorted selection of members: the finite part plus chain heads."""
        vals = set(self.finite_part)
        for c in self.chains:
            vals.update(c.terms(per_chain))
        return sorted(vals)

    def mapped(self, slope: Fraction, shift: Fraction) -> "UtilityDomain":
        return UtilityDomain(
            tuple(slope * v + shift for v in self.finite_part),
            tuple(c.mapped(slope, shift) for c in self.chains),
        )

    def to_json(self) -> dict:
        return {
            "finite": [format_rational(v) for v in self.finite_part],
            "chains": [c.to_json() for c in self.chains],
        }


def domain_from_json(obj: Any) -> UtilityDomain:
    if isinstance(obj, list):
        obj = {"finite": obj, "chains": []}
    if not isinstance(obj, dict):
        raise DescriptorError("domain: expected an object")
    finite_raw = obj.get("finite", [])
    if not isinstance(finite_raw, list):
        raise DescriptorError("finite: expected a list")
    finite = []
    for k, v in enumerate(finite_raw):
        try:
            finite.append(rational(v))
        except (TypeError, ValueError) as exc:
            raise DescriptorError(f"finite[{k}]: {exc}") from exc
    chains = []
    for k, raw in enumerate(obj.get("chains", [])):
        where = f"chains[{k}]"
        if not isinstance(raw, dict) or "form" not in raw:
            raise DescriptorError(f"{where}: expected an object with a 'form'")
        try:
            chain = MonotoneChain.parse(str(raw["form"]))
        except DescriptorError as exc:
            raise DescriptorError(f"{where}.form: {exc}") from exc
        if "dir" in raw and raw["dir"] != chain.direction.value:
            raise DescriptorError(
                f"{where}.dir: declared {raw['dir']!r} but the form is {chain.direction.value!r}"
            )
        if "limit" in raw:
            try:
                declared = _read_ext(raw["limit"])
            except (TypeError, ValueError) as exc:
                raise DescriptorError(f"{where}.limit: {exc}") from exc
            if declared != chain.limit:
                raise DescriptorError(
                    f"{where}.limit: declared {raw['limit']!r} but the form tends to {_fmt_ext(chain.limit)}"
                )
        chains.append(chain)
    try:
        return UtilityDomain(tuple(finite), tuple(chains))
    except DescriptorError as exc:
        raise DescriptorError(f"domain: {exc}") from exc


# -- order-type analysis ----------------------------------------------------

@dataclass(frozen=True)
class WellOrderReport:
    well_ordered: bool
    witness: MonotoneChain | None = None

    def __bool__(self) -> bool:
        return self.well_ordered

    def witness_terms(self, count: int = 50) -> list[Fraction]:
        return self.witness.terms(count) if self.witness else []


@dataclass(frozen=True)
class SigmaReport:
    contains_sigma: bool
    decreasing: MonotoneChain | None = None
    increasing: MonotoneChain | None = None

    def __bool__(self) -> bool:
        return self.contains_sigma

    def witness_terms(self, count: int = 20) -> list[Fraction]:
        """A finite window of the integer-like subset, listed in increasing order.

        The descending chain is advanced until its terms fall below the
        ascending chain's terms so the two halves do not interleave.
        """
        if not self.contains_sigma:
            return []
        dec, inc = self.decreasing, self.increasing
        assert dec is not None and inc is not None
        start_dec = 1
        # a tail of the ascending chain starting at its first term exceeding inf(dec)
        start_inc = 1
        while inc.term(start_inc) <= dec.limit:
            start_inc += 1
        floor = inc.term(start_inc)
        while dec.term(start_dec) >= floor:
            start_dec += 1
        low = sorted(dec.terms(count, start_dec))
        high = inc.terms(count, start_inc)
        return low + high


class OrderType(enum.Enum):
    WELL_ORDERED = "WellOrdered"
    OMEGA_STAR = "OmegaStar"
    SIGMA_SUBSET = "SigmaSubset"
    OMEGA_STAR_NO_SIGMA = "OmegaStarNoSigma"


@dataclass(frozen=True)
class Classification:
    order_type: OrderType
    minimum: Fraction | None
    maximum: Fraction | None
    inf: Extended
    sup: Extended
    well_order: WellOrderReport
    sigma: SigmaReport

    def to_json(self) -> dict:
        out: dict = {
            "order_type": self.order_type.value,
            "well_ordered": self.well_order.well_ordered,
            "contains_sigma": self.sigma.contains_sigma,
            "min": None if self.minimum is None else format_rational(self.minimum),
            "max": None if self.maximum is None else format_rational(self.maximum),
            "inf": _fmt_ext(self.inf),
            "sup": _fmt_ext(self.sup),
        }
        if self.well_order.witness:
            out["decreasing_witness"] = self.well_order.witness.to_json()
        if self.sigma.contains_sigma:
            out["sigma_witness"] = {
                "decreasing": self.sigma.decreasing.to_json(),  # type: ignore[union-attr]
                "increasing": self.sigma.increasing.to_json(),  # type: ignore[union-attr]
            }
        return out


def is_well_ordered(Y: UtilityDomain) -> WellOrderReport:
    dec = Y.decreasing()
    if dec:
        return WellOrderReport(False, dec[0])
    return WellOrderReport(True)


def contains_sigma_subset(Y: UtilityDomain) -> SigmaReport:
    for d in Y.decreasing():
        for i in Y.increasing():
            if d.limit < i.limit:
                return SigmaReport(True, d, i)
    return SigmaReport(False)


def _is_omega_star(Y: UtilityDomain) -> bool:
    """The whole domain is order-isomorphic to the negative integers."""
    dec = Y.decreasing()
    if not dec or Y.increasing():
        return False
    limits = {c.limit for c in dec}
    if len(limits) != 1:
        return False
    (lim,) = limits
    return all(v > lim for v in Y.finite_part)


def classify(Y: UtilityDomain) -> Classification:
    wo = is_well_ordered(Y)
    sig = contains_sigma_subset(Y)
    if wo:
        kind = OrderType.WELL_ORDERED
    elif sig:
        kind = OrderType.SIGMA_SUBSET
    elif _is_omega_star(Y):
        kind = OrderType.OMEGA_STAR
    else:
        kind = OrderType.OMEGA_STAR_NO_SIGMA
    return Classification(kind, Y.minimum, Y.maximum, Y.inf, Y.sup, wo, sig)


def chain(text: str) -> MonotoneChain:
    return MonotoneChain.parse(text)


def reference_domains() -> dict[str, UtilityDomain]:
    """The four named domains used to illustrate order types."""
    return {
        "Y": UtilityDomain(chains=(chain("1/(n+2)"), chain("n/(n+1)"))),
        "Y_prime": UtilityDomain(chains=(chain("-n"), chain("n"))),
        "Y_bold": UtilityDomain(chains=(chain("1/2 - 1/(n+1)"), chain("1/2 + 1/(n+1)"))),
        "negative_integers": UtilityDomain(chains=(chain("-n"),)),
    }


def values_within(Y: UtilityDomain, values: Iterable[Fraction]) -> bool:
    return all(v in Y for v in values)
