"""Exhaustive enumeration of labeled topologies on small carriers.

Topologies on a finite set correspond one-to-one with preorders (reflexive,
transitive relations).  We scan every reflexive relation on ``n`` points,
keep the transitive ones, and turn each into its Alexandrov topology.

The relation matrix is ``M[x][y] = 1`` iff ``y ∈ cl({x})``; its row ``x`` is
the closure of ``{x}``.  Emission order is lexicographic on ``M`` read
row-major.  The diagonal is always set, so that is the numeric order of the
off-diagonal entries read as a binary number, ``M[0][1]`` most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CarrierTooLarge
from .topology import (
    FiniteSpace,
    _up_closed_sets,
    is_extremally_disconnected,
    is_hyperconnected,
    is_pointwise_non_t1,
    is_t0,
    is_t1,
)

__all__ = [
    "MAX_ENUM_POINTS",
    "EnumerationFilter",
    "PairMode",
    "enumerate_preorders",
    "enumerate_spaces",
    "enumerate_subset_pairs",
    "all_spaces",
    "enumerate_indexed",
]

MAX_ENUM_POINTS = 5

PairMode = str
PAIR_MODES = ("all-subsets", "open-pairs-disjoint", "open-covers")


@dataclass(frozen=True)
class EnumerationFilter:
    """Space-class requirements; flags are conjunctive, all-false keeps every space."""

    require_non_t1: bool = False
    require_pointwise_non_t1: bool = False
    require_ed: bool = False
    require_hyperconnected: bool = False
    require_t0: bool = False

    def accepts(self, space: FiniteSpace) -> bool:
        if self.require_non_t1 and is_t1(space):
            return False
        if self.require_pointwise_non_t1 and not is_pointwise_non_t1(space):
            return False
        if self.require_ed and not is_extremally_disconnected(space):
            return False
        if self.require_hyperconnected and not is_hyperconnected(space):
            return False
        if self.require_t0 and not is_t0(space):
            return False
        return True


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"carrier size must be at least 1, got {n}")
    if n > MAX_ENUM_POINTS:
        # the relation scan holds 2**(n*(n-1)) candidates in memory
        raise CarrierTooLarge(f"enumeration supports n <= {MAX_ENUM_POINTS}, got {n}")


@lru_cache(maxsize=None)
def enumerate_preorders(n: int) -> tuple[tuple[int, ...], ...]:
    """All preorders on ``n`` points as tuples of singleton-closure masks,
    in lexicographic order of the relation matrix."""
    _check_n(n)
    cells = [(x, y) for x in range(n) for y in range(n) if x != y]
    e = len(cells)
    masks = np.arange(1 << e, dtype=np.int64)
    rows = [np.full(masks.shape, 1 << x, dtype=np.int64) for x in range(n)]
    for idx, (x, y) in enumerate(cells):
        bit = (masks >> (e - 1 - idx)) & 1
        rows[x] |= bit << y
    # transitive: y in row x  =>  row y ⊆ row x
    ok = np.ones(masks.shape, dtype=bool)
    for x, y in cells:
        member = (rows[x] >> y) & 1 == 1
        ok &= ~member | ((rows[y] & ~rows[x]) == 0)
    table = np.stack(rows, axis=1)[ok]
    return tuple(tuple(int(v) for v in r) for r in table)


@lru_cache(maxsize=None)
def all_spaces(n: int) -> tuple[FiniteSpace, ...]:
    """Every labeled topology on ``n`` points, in emission order."""
    return tuple(
        FiniteSpace(n, _up_closed_sets(n, closures))
        for closures in enumerate_preorders(n)
    )


def enumerate_spaces(
    n: int,
    filter: EnumerationFilter | None = None,
    *,
    shards: int = 1,
    shard_index: int = 0,
) -> Iterator[FiniteSpace]:
    """Stream every labeled topology on ``n`` points that passes ``filter``.

    With ``shards > 1`` only spaces whose emission index is congruent to
    ``shard_index`` modulo ``shards`` are yielded; the shards partition the
    unsharded stream.
    """
    for _, space in enumerate_indexed(n, filter, shards=shards, shard_index=shard_index):
        yield space


def enumerate_indexed(
    n: int,
    filter: EnumerationFilter | None = None,
    *,
    shards: int = 1,
    shard_index: int = 0,
) -> Iterator[tuple[int, FiniteSpace]]:
    """Like :func:`enumerate_spaces` but also yields each space's global emission index."""
    if shards < 1 or not 0 <= shard_index < shards:
        raise ValueError(f"invalid shard {shard_index} of {shards}")
    spaces = all_spaces(n)
    for i in range(shard_index, len(spaces), shards):
        space = spaces[i]
        if filter is None or filter.accepts(space):
            yield i, space


def enumerate_subset_pairs(space: FiniteSpace, mode: PairMode) -> Iterator[tuple[int, int]]:
    """Ordered pairs of masks selected by ``mode``.

    ``all-subsets``
        every ``(A, B)`` with ``A, B ⊆ X``.
    ``open-pairs-disjoint``
        nonempty opens with ``A ∩ B = ∅``.
    ``open-covers``
        nonempty opens with ``A ∪ B = X``.
    """
    if mode == "all-subsets":
        size = 1 << space.n
        for a in range(size):
            for b in range(size):
                yield a, b
    elif mode == "open-pairs-disjoint":
        for a in space.nonempty_opens:
            for b in space.nonempty_opens:
                if a & b == 0:
                    yield a, b
    elif mode == "open-covers":
        for a in space.nonempty_opens:
            for b in space.nonempty_opens:
                if a | b == space.full:
                    yield a, b
    else:
        raise ValueError(f"unknown pair mode {mode!r}; expected one of {PAIR_MODES}")
