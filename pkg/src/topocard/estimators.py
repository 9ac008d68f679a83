"""Interval estimators for cardinalities of sets in finite (topological) spaces.

Each estimator is a pure function from a hypothesis bundle to a
:class:`~topocard.intervals.NatInterval`.  None of them looks at an actual
space; they apply their bound formula verbatim, and :mod:`topocard.verifier`
measures how often the formula holds.

Estimators are registered under stable identifiers (``thm2.1`` ... ``thm3.5``),
see :data:`ESTIMATORS`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import EmptyAfterClamp, EmptyEstimate, HypothesisViolated, UnknownTheorem
from .intervals import NatInterval, add, clamp_nat, div_card, sub

__all__ = [
    "SupersetHypothesis",
    "ProductHypothesis",
    "UnionSplitHypothesis",
    "ClosureHypothesis",
    "InteriorHypothesis",
    "SemiOpenHypothesis",
    "EdUnionHypothesis",
    "est_superset_card",
    "est_factor_card",
    "est_intersection_card",
    "est_closure_card",
    "est_interior_card",
    "est_semiopen_card",
    "est_ed_union_closure_card",
    "est_hyperconnected_intersection_card",
    "ESTIMATORS",
    "THEOREM_IDS",
    "get_estimator",
    "estimate",
]


def _nat(value) -> NatInterval:
    return NatInterval.coerce(value)


def _count(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise HypothesisViolated(f"{name} must be a nonnegative integer, got {value!r}")
    return value


@dataclass(frozen=True)
class SupersetHypothesis:
    """``A ⊊ B ⊊ X`` with ``card(X) = n`` and ``card(A) ∈ a``."""

    n: int
    a: NatInterval

    def __post_init__(self):
        _count(self.n, "n")
        object.__setattr__(self, "a", _nat(self.a))
        if self.a.hi > self.n:
            raise HypothesisViolated(f"card(A) <= {self.a.hi} exceeds card(X) = {self.n}")


@dataclass(frozen=True)
class ProductHypothesis:
    """``C = A × B`` with ``card(C) ∈ c`` and ``card(A) ∈ a``."""

    c: NatInterval
    a: NatInterval

    def __post_init__(self):
        object.__setattr__(self, "c", _nat(self.c))
        object.__setattr__(self, "a", _nat(self.a))


@dataclass(frozen=True)
class UnionSplitHypothesis:
    """``X = A ∪ B`` with ``card(X) ∈ x``, ``card(A) ∈ a``, ``card(B) ∈ b``."""

    x: NatInterval
    a: NatInterval
    b: NatInterval

    def __post_init__(self):
        for name in ("x", "a", "b"):
            object.__setattr__(self, name, _nat(getattr(self, name)))
        if self.a.hi > self.x.hi or self.b.hi > self.x.hi:
            raise HypothesisViolated(
                f"part bounds {self.a}, {self.b} exceed the carrier bound {self.x}"
            )


@dataclass(frozen=True)
class EdUnionHypothesis(UnionSplitHypothesis):
    """Disjoint nonempty opens ``A``, ``B`` of an extremally disconnected space."""


@dataclass(frozen=True)
class ClosureHypothesis:
    n: int
    m: int

    def __post_init__(self):
        _count(self.n, "n")
        _count(self.m, "m")


@dataclass(frozen=True)
class InteriorHypothesis:
    """``card(A) = p`` and a cap ``k_x >= card(cl({x}))`` for each point outside ``A``."""

    n: int
    p: int
    k_bounds: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        _count(self.n, "n")
        _count(self.p, "p")
        caps = self.k_bounds
        if not isinstance(caps, Mapping):
            caps = dict(enumerate(caps))
        object.__setattr__(self, "k_bounds", dict(caps))

    @property
    def cap_sum(self) -> int:
        return sum(self.k_bounds.values())


@dataclass(frozen=True)
class SemiOpenHypothesis:
    n: int
    k: int

    def __post_init__(self):
        _count(self.n, "n")
        _count(self.k, "k")


def est_superset_card(h: SupersetHypothesis) -> NatInterval:
    """Bounds on ``card(B)`` for a strict chain ``A ⊊ B ⊊ X``: ``[a.lo + 1, n - 1]``."""
    lo, hi = h.a.lo + 1, h.n - 1
    if lo > hi:
        raise EmptyEstimate(f"no strict chain A ⊊ B ⊊ X fits: [{lo}, {hi}] is empty")
    return NatInterval(lo, hi)


def est_factor_card(h: ProductHypothesis) -> NatInterval:
    """Bounds on ``card(B)`` from ``card(A × B)`` and ``card(A)``."""
    try:
        return div_card(h.c, h.a)
    except EmptyAfterClamp as exc:
        raise EmptyEstimate(str(exc)) from None


def est_intersection_card(h: UnionSplitHypothesis) -> NatInterval:
    """Inclusion-exclusion bounds on ``card(A ∩ B)`` given ``X = A ∪ B``."""
    return clamp_nat(sub(add(h.a, h.b), h.x))


def est_closure_card(h: ClosureHypothesis) -> NatInterval:
    """``[2m, n]`` for a set of ``m`` points, ``1 <= m <= n // 2``."""
    if not 1 <= h.m <= h.n // 2:
        raise HypothesisViolated(f"m = {h.m} outside [1, {h.n // 2}]")
    return NatInterval(2 * h.m, h.n)


def est_interior_card(h: InteriorHypothesis) -> NatInterval:
    """Bounds on ``card(int(A))`` for ``card(A) = p >= ceil(n/2)``.

    With ``S`` the sum of closure caps over the ``n - p`` outside points the
    result is ``[0, 2p - n]`` when ``n <= S`` and ``[n - S, 2p - n]`` otherwise.
    """
    n, p = h.n, h.p
    if not -(-n // 2) <= p <= n:
        raise HypothesisViolated(f"p = {p} outside [{-(-n // 2)}, {n}]")
    if len(h.k_bounds) != n - p:
        raise HypothesisViolated(
            f"expected {n - p} closure caps (one per point outside A), got {len(h.k_bounds)}"
        )
    small = {x: k for x, k in h.k_bounds.items() if k < 2}
    if small:
        raise HypothesisViolated(f"closure caps must be >= 2, got {small}")
    s = h.cap_sum
    lo = 0 if n <= s else n - s
    return NatInterval(lo, 2 * p - n)


def est_semiopen_card(h: SemiOpenHypothesis) -> NatInterval:
    """``[k + 1, 2k - 1]`` where ``k`` is the size of the witness open set."""
    if not 1 <= h.k <= h.n // 2:
        raise HypothesisViolated(f"k = {h.k} outside [1, {h.n // 2}]")
    if h.k == 1:
        raise EmptyEstimate("k = 1 gives the empty interval [2, 1]")
    return NatInterval(h.k + 1, 2 * h.k - 1)


def est_ed_union_closure_card(h: EdUnionHypothesis) -> NatInterval:
    """``[2 a.lo + 2 b.lo, x.hi]`` for the closure of a union of disjoint opens."""
    lo = 2 * h.a.lo + 2 * h.b.lo
    if lo > h.x.hi:
        raise EmptyEstimate(f"lower bound {lo} exceeds card(X) <= {h.x.hi}")
    return NatInterval(lo, h.x.hi)


def est_hyperconnected_intersection_card(h: UnionSplitHypothesis) -> NatInterval:
    """Same arithmetic as :func:`est_intersection_card`, for an open cover
    ``X = O1 ∪ O2`` of a hyperconnected space."""
    return clamp_nat(sub(add(h.a, h.b), h.x))


ESTIMATORS: dict[str, tuple[type, Callable[..., NatInterval]]] = {
    "thm2.1": (SupersetHypothesis, est_superset_card),
    "thm2.2": (ProductHypothesis, est_factor_card),
    "thm2.3": (UnionSplitHypothesis, est_intersection_card),
    "thm3.1": (ClosureHypothesis, est_closure_card),
    "thm3.2": (InteriorHypothesis, est_interior_card),
    "thm3.3": (SemiOpenHypothesis, est_semiopen_card),
    "thm3.4": (EdUnionHypothesis, est_ed_union_closure_card),
    "thm3.5": (UnionSplitHypothesis, est_hyperconnected_intersection_card),
}

THEOREM_IDS: tuple[str, ...] = tuple(ESTIMATORS)


def get_estimator(theorem_id: str) -> tuple[type, Callable[..., NatInterval]]:
    try:
        return ESTIMATORS[theorem_id]
    except KeyError:
        raise UnknownTheorem(
            f"unknown theorem {theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}"
        ) from None


def estimate(theorem_id: str, **params) -> NatInterval:
    """Build the hypothesis bundle for ``theorem_id`` from keyword arguments and evaluate it.

    >>> estimate("thm2.2", c=(12, 20), a=(3, 4))
    NatInterval(lo=3, hi=6)
    """
    hyp_cls, fn = get_estimator(theorem_id)
    try:
        hyp = hyp_cls(**params)
    except TypeError as exc:
        raise HypothesisViolated(f"{theorem_id}: {exc}") from None
    return fn(hyp)

