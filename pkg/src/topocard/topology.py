"""Finite topological spaces on at most 16 points, stored as bitmasks.

A subset of ``{0, ..., n-1}`` is an ``int`` whose bit ``i`` is set when point
``i`` belongs to it.  :class:`PointSet` wraps such a mask together with the
carrier size for the public API; the hot paths in :class:`FiniteSpace` work on
raw masks (the ``*_bits`` methods).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import NotATopology

__all__ = [
    "MAX_POINTS",
    "PointSet",
    "FiniteSpace",
    "SpaceClassification",
    "validate",
    "closure",
    "interior",
    "is_t0",
    "is_t1",
    "is_pointwise_non_t1",
    "is_extremally_disconnected",
    "is_hyperconnected",
    "is_semi_open",
    "is_semi_closed",
    "specialization_preorder",
    "space_from_preorder",
    "classify",
    "popcount",
    "bits_of",
]

MAX_POINTS = 16


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_of(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True, slots=True)
class PointSet:
    """A subset of the carrier ``{0, ..., n-1}``."""

    bits: int
    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_POINTS:
            raise ValueError(f"carrier size {self.n} outside [0, {MAX_POINTS}]")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has bits outside a {self.n}-point carrier")

    @classmethod
    def of(cls, points: Iterable[int], n: int) -> PointSet:
        mask = 0
        for p in points:
            if not 0 <= p < n:
                raise ValueError(f"point {p} outside a {n}-point carrier")
            mask |= 1 << p
        return cls(mask, n)

    @classmethod
    def full(cls, n: int) -> PointSet:
        return cls((1 << n) - 1, n)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __contains__(self, point: int) -> bool:
        return bool(self.bits >> point & 1)

    def _other(self, other: PointSet) -> int:
        if other.n != self.n:
            raise ValueError("point sets live on different carriers")
        return other.bits

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(self.bits | self._other(other), self.n)

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(self.bits & self._other(other), self.n)

    def __sub__(self, other: PointSet) -> PointSet:
        return PointSet(self.bits & ~self._other(other), self.n)

    def complement(self) -> PointSet:
        return PointSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def __le__(self, other: PointSet) -> bool:
        return self.bits & ~self._other(other) == 0

    def __lt__(self, other: PointSet) -> bool:
        return self <= other and self.bits != other.bits

    def __repr__(self) -> str:
        return f"PointSet({{{', '.join(map(str, self))}}}, n={self.n})"


@dataclass(frozen=True)
class FiniteSpace:
    """A validated topology on ``n`` points.

    ``opens`` is the sorted tuple of open-set masks.  Build instances through
    :func:`validate` (or :meth:`from_json`); the constructor trusts its input.
    """

    n: int
    opens: tuple[int, ...]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @cached_property
    def nonempty_opens(self) -> tuple[int, ...]:
        return tuple(o for o in self.opens if o)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.open_set

    def closure_bits(self, a: int) -> int:
        # X minus every open that misses a
        hidden = 0
        for o in self.opens:
            if o & a == 0:
                hidden |= o
        return self.full & ~hidden

    def interior_bits(self, a: int) -> int:
        inside = 0
        for o in self.opens:
            if o & ~a == 0:
                inside |= o
        return inside

    @cached_property
    def singleton_closures(self) -> tuple[int, ...]:
        return tuple(self.closure_bits(1 << x) for x in range(self.n))

    @cached_property
    def closure_table(self) -> tuple[int, ...]:
        """Closure of every subset, indexed by mask."""
        return tuple(self.closure_bits(a) for a in range(1 << self.n))

    @cached_property
    def interior_table(self) -> tuple[int, ...]:
        return tuple(self.interior_bits(a) for a in range(1 << self.n))

    def closure(self, a: PointSet) -> PointSet:
        return PointSet(self.closure_bits(self._mask(a)), self.n)

    def interior(self, a: PointSet) -> PointSet:
        return PointSet(self.interior_bits(self._mask(a)), self.n)

    def _mask(self, a) -> int:
        if isinstance(a, PointSet):
            if a.n != self.n:
                raise ValueError(f"point set on {a.n} points used with a {self.n}-point space")
            return a.bits
        if a < 0 or a >> self.n:
            raise ValueError(f"mask {a:#x} is not a subset of the carrier")
        return a

    def to_json(self) -> dict:
        return {"n": self.n, "opens": list(self.opens)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> FiniteSpace:
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise NotATopology(f"malformed space JSON: {exc}") from None
        if not isinstance(data, dict) or "n" not in data or "opens" not in data:
            raise NotATopology('space JSON must be an object with keys "n" and "opens"')
        n, opens = data["n"], data["opens"]
        if not isinstance(opens, list) or not all(
            isinstance(o, int) and not isinstance(o, bool) for o in opens
        ):
            raise NotATopology('"opens" must be a list of integer bitmasks')
        return validate(n, opens)


def validate(n: int, opens: Iterable[int]) -> FiniteSpace:
    """Check the topology axioms for a family of masks on ``n`` points.

    Raises :class:`NotATopology` naming the first violation found: a carrier
    size out of range, a mask outside the carrier, a missing empty set or
    carrier, or the first pair (in sorted order) whose union or intersection
    is missing from the family.
    """
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_POINTS:
        raise NotATopology(f"carrier size must be an integer in [1, {MAX_POINTS}], got {n!r}")
    full = (1 << n) - 1
    family = sorted(set(opens))
    for o in family:
        if o < 0 or o & ~full:
            raise NotATopology(f"open set {o} is not a subset of a {n}-point carrier")
    members = set(family)
    if 0 not in members:
        raise NotATopology("missing the empty set (0)")
    if full not in members:
        raise NotATopology(f"missing the whole carrier X ({full})")
    for i, u in enumerate(family):
        for v in family[i + 1:]:
            if u | v not in members:
                raise NotATopology(
                    f"union of opens {u} and {v} is {u | v}, which is not open", (u, v)
                )
            if u & v not in members:
                raise NotATopology(
                    f"intersection of opens {u} and {v} is {u & v}, which is not open", (u, v)
                )
    return FiniteSpace(n, tuple(family))


def closure(space: FiniteSpace, a: PointSet) -> PointSet:
    """Smallest closed set containing ``a``."""
    return space.closure(a)


def interior(space: FiniteSpace, a: PointSet) -> PointSet:
    """Largest open set contained in ``a``."""
    return space.interior(a)


def is_t0(space: FiniteSpace) -> bool:
    # distinct points have distinct closures
    return len(set(space.singleton_closures)) == space.n


def is_t1(space: FiniteSpace) -> bool:
    return all(c == 1 << x for x, c in enumerate(space.singleton_closures))


def is_pointwise_non_t1(space: FiniteSpace) -> bool:
    """True when no singleton is closed, i.e. every ``cl({x})`` has two or more points."""
    return all(popcount(c) >= 2 for c in space.singleton_closures)


def is_extremally_disconnected(space: FiniteSpace) -> bool:
    return all(space.is_open(space.closure_bits(o)) for o in space.opens)


def is_hyperconnected(space: FiniteSpace) -> bool:
    return all(space.closure_bits(o) == space.full for o in space.nonempty_opens)


def is_semi_open(space: FiniteSpace, a: PointSet) -> tuple[bool, PointSet | None]:
    """Decide ``a ⊆ cl(int(a))``.

    Returns ``(flag, witness)``.  For a nonempty semi-open set the witness is
    the open set ``int(a)``, which satisfies ``int(a) ⊆ a ⊆ cl(int(a))``;
    otherwise the witness is ``None``.
    """
    mask = space._mask(a)
    inner = space.interior_bits(mask)
    ok = mask & ~space.closure_bits(inner) == 0
    if ok and mask:
        return True, PointSet(inner, space.n)
    return ok, None


def is_semi_closed(space: FiniteSpace, b: PointSet) -> bool:
    mask = space._mask(b)
    return space.interior_bits(space.closure_bits(mask)) & ~mask == 0


def specialization_preorder(space: FiniteSpace) -> np.ndarray:
    """Boolean matrix ``R`` with ``R[y, x]`` true iff ``y ∈ cl({x})`` (``y ≼ x``)."""
    rel = np.zeros((space.n, space.n), dtype=bool)
    for x, c in enumerate(space.singleton_closures):
        for y in bits_of(c):
            rel[y, x] = True
    return rel


def _up_closed_sets(n: int, closures: Iterable[int]) -> tuple[int, ...]:
    """Opens of the Alexandrov topology whose singleton closures are given.

    ``U`` is open iff its complement is closed, i.e. no point outside ``U``
    has a point of ``U`` in its closure.
    """
    full = (1 << n) - 1
    closures = tuple(closures)
    opens = []
    for u in range(1 << n):
        outside = full & ~u
        if all(closures[x] & u == 0 for x in bits_of(outside)):
            opens.append(u)
    return tuple(opens)


def space_from_preorder(rel) -> FiniteSpace:
    """Rebuild the topology from a specialization preorder (inverse of
    :func:`specialization_preorder`).  ``rel`` must be reflexive and transitive."""
    rel = np.asarray(rel, dtype=bool)
    n = rel.shape[0]
    if rel.shape != (n, n):
        raise ValueError("relation must be a square matrix")
    if not rel.diagonal().all():
        raise ValueError("relation is not reflexive")
    r = rel.astype(np.int64)
    if ((r @ r > 0) & ~rel).any():
        raise ValueError("relation is not transitive")
    closures = [sum(1 << y for y in range(n) if rel[y, x]) for x in range(n)]
    return FiniteSpace(n, _up_closed_sets(n, closures))


@dataclass(frozen=True)
class SpaceClassification:
    t0: bool
    t1: bool
    pointwise_non_t1: bool
    extremally_disconnected: bool
    hyperconnected: bool

    def to_json(self) -> dict:
        return {
            "t0": self.t0,
            "t1": self.t1,
            "pointwise_non_t1": self.pointwise_non_t1,
            "extremally_disconnected": self.extremally_disconnected,
            "hyperconnected": self.hyperconnected,
        }


def classify(space: FiniteSpace) -> SpaceClassification:
    return SpaceClassification(
        t0=is_t0(space),
        t1=is_t1(space),
        pointwise_non_t1=is_pointwise_non_t1(space),
        extremally_disconnected=is_extremally_disconnected(space),
        hyperconnected=is_hyperconnected(space),
    )
