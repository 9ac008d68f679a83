"""Exact integer interval arithmetic for cardinality estimates.

A :class:`NatInterval` ``[lo, hi]`` is the set of natural numbers (zero
included) between its endpoints.  Operations follow Moore's endpoint rules,
restricted to the cases needed for cardinalities:

* addition is endpoint-wise,
* subtraction may leave the naturals, so it returns a :class:`SignedInterval`
  which has to be clamped back explicitly with :func:`clamp_nat`,
* multiplication uses the nonnegative shortcut ``[a.lo*b.lo, a.hi*b.hi]``,
* division only exists in its integer form: ``[ceil(c.lo/a.hi), floor(c.hi/a.lo)]``.

Empty intervals are never values.  Any operation that would produce one raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DisjointEstimates, DivisorContainsZero, EmptyAfterClamp, InvalidInterval

__all__ = [
    "NatInterval",
    "SignedInterval",
    "from_scalar",
    "add",
    "sub",
    "clamp_nat",
    "mul",
    "div_card",
    "refine",
    "ceil_div",
    "floor_div",
]


def _check_int(value, name: str) -> int:
    # bool is an int subclass but never a meaningful endpoint
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInterval(f"{name} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class SignedInterval:
    """Integer interval that may extend below zero (subtraction result)."""

    lo: int
    hi: int

    def __post_init__(self):
        _check_int(self.lo, "lo")
        _check_int(self.hi, "hi")
        if self.lo > self.hi:
            raise InvalidInterval(f"inverted interval [{self.lo}, {self.hi}]")

    def __contains__(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def to_json(self) -> list[int]:
        return [self.lo, self.hi]


@dataclass(frozen=True, slots=True)
class NatInterval:
    """Closed interval ``[lo, hi]`` of natural numbers, ``0 <= lo <= hi``.

    >>> NatInterval(2, 3) + NatInterval(4, 7)
    NatInterval(lo=6, hi=10)
    >>> 5 in NatInterval(4, 6)
    True
    """

    lo: int
    hi: int

    def __post_init__(self):
        _check_int(self.lo, "lo")
        _check_int(self.hi, "hi")
        if self.lo < 0:
            raise InvalidInterval(f"negative lower endpoint {self.lo}")
        if self.lo > self.hi:
            raise InvalidInterval(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def coerce(cls, value) -> NatInterval:
        """Accept an interval, a scalar, or a ``(lo, hi)`` pair."""
        if isinstance(value, NatInterval):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return from_scalar(value)
        if isinstance(value, SignedInterval):
            return cls(value.lo, value.hi)
        try:
            lo, hi = value
        except (TypeError, ValueError):
            raise InvalidInterval(f"cannot interpret {value!r} as an interval") from None
        return cls(lo, hi)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> NatInterval:
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise InvalidInterval(f"expected a two-element array, got {data!r}")
        return cls(data[0], data[1])

    def to_json(self) -> list[int]:
        return [self.lo, self.hi]

    @property
    def width(self) -> int:
        return self.hi - self.lo

    def __contains__(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def issubset(self, other: NatInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other) -> NatInterval:
        return add(self, NatInterval.coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> SignedInterval:
        return sub(self, NatInterval.coerce(other))

    def __rsub__(self, other) -> SignedInterval:
        return sub(NatInterval.coerce(other), self)

    def __mul__(self, other) -> NatInterval:
        return mul(self, NatInterval.coerce(other))

    __rmul__ = __mul__

    def __and__(self, other) -> NatInterval:
        return refine(self, NatInterval.coerce(other))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def from_scalar(k: int) -> NatInterval:
    """Identify the natural number ``k`` with the degenerate interval ``[k, k]``."""
    return NatInterval(k, k)


def add(a: NatInterval, b: NatInterval) -> NatInterval:
    return NatInterval(a.lo + b.lo, a.hi + b.hi)


def sub(a: NatInterval, b: NatInterval) -> SignedInterval:
    return SignedInterval(a.lo - b.hi, a.hi - b.lo)


def clamp_nat(s: SignedInterval) -> NatInterval:
    """Intersect ``s`` with the naturals; raise if nothing is left."""
    if s.hi < 0:
        raise EmptyAfterClamp(f"[{s.lo}, {s.hi}] contains no natural number")
    return NatInterval(max(s.lo, 0), s.hi)


def mul(a: NatInterval, b: NatInterval) -> NatInterval:
    # both operands are nonnegative, so min/max of the four corner products
    # are always lo*lo and hi*hi
    return NatInterval(a.lo * b.lo, a.hi * b.hi)


def floor_div(p: int, q: int) -> int:
    """Largest integer ``m`` with ``m <= p/q`` (``q > 0``)."""
    return p // q


def ceil_div(p: int, q: int) -> int:
    """Smallest integer ``m`` with ``m >= p/q`` (``q > 0``)."""
    return -((-p) // q)


def div_card(c: NatInterval, a: NatInterval) -> NatInterval:
    """Integer quotient bounds ``[ceil(c.lo/a.hi), floor(c.hi/a.lo)]``.

    Raises :class:`DivisorContainsZero` when ``a.lo == 0`` and
    :class:`EmptyAfterClamp` when the bounds cross (no integer quotient fits).
    """
    if a.lo == 0:
        raise DivisorContainsZero(f"divisor {a} contains 0")
    lo = ceil_div(c.lo, a.hi)
    hi = floor_div(c.hi, a.lo)
    if lo > hi:
        raise EmptyAfterClamp(f"{c} / {a} gives inverted bounds [{lo}, {hi}]")
    return NatInterval(lo, hi)


def refine(a: NatInterval, b: NatInterval) -> NatInterval:
    """Combine two valid estimates of the same cardinality."""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        raise DisjointEstimates(f"estimates {a} and {b} are disjoint")
    return NatInterval(lo, hi)
