"""Exhaustive verification of the interval estimators against exact cardinalities.

For a theorem and a carrier size ``n`` the verifier walks every qualifying
configuration (a bare ``n``-set for the set-level bounds, every enumerated
topology of the right class for the topological ones), computes the true
cardinality with the operators in :mod:`topocard.topology`, asks the
estimator for its interval, and counts containment.

Work is split into shards by emission index.  A shard produces an ordinary
:class:`VerificationReport`; :func:`merge_reports` combines shards and gives
the same counts and counterexamples as an unsharded run.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .enumeration import MAX_ENUM_POINTS, EnumerationFilter, enumerate_indexed
from .errors import ESTIMATOR_FAILURES, CarrierTooLarge, UnknownTheorem
from .estimators import (
    THEOREM_IDS,
    ClosureHypothesis,
    EdUnionHypothesis,
    InteriorHypothesis,
    ProductHypothesis,
    SemiOpenHypothesis,
    SupersetHypothesis,
    UnionSplitHypothesis,
    est_closure_card,
    est_ed_union_closure_card,
    est_factor_card,
    est_hyperconnected_intersection_card,
    est_interior_card,
    est_intersection_card,
    est_semiopen_card,
    est_superset_card,
)
from .intervals import NatInterval, from_scalar
from .topology import FiniteSpace, popcount, validate

__all__ = [
    "READINGS",
    "INCLUSIONS",
    "SET_LEVEL_MAX_N",
    "TheoremCase",
    "VerificationReport",
    "verify_theorem",
    "verify_sharded",
    "verify_all",
    "merge_reports",
    "reports_to_csv",
    "CSV_COLUMNS",
    "thread_count",
]

LITERAL = "literal-non-t1"
POINTWISE = "pointwise-non-t1"
NOT_APPLICABLE = "n/a"
READINGS = (LITERAL, POINTWISE)
INCLUSIONS = ("non-strict", "strict")

SET_LEVEL = ("thm2.1", "thm2.2", "thm2.3")
READING_DEPENDENT = ("thm3.1", "thm3.2", "thm3.3", "thm3.4")
SET_LEVEL_MAX_N = 6

DEFAULT_CAP = 10

CSV_COLUMNS = (
    "theorem_id",
    "n",
    "reading",
    "cases_total",
    "cases_contained",
    "containment_rate",
    "n_counterexamples",
)


@dataclass(frozen=True)
class TheoremCase:
    """One hypothesis-satisfying configuration and its verdict.

    ``sets`` holds the masks bound by the hypothesis (``A``; ``A, B``;
    ``A, O`` for a semi-open set and its witness; ...).  ``predicted`` is
    ``None`` when the estimator refused the hypothesis, in which case
    ``error`` names the exception.  ``index`` orders cases by enumeration.
    """

    theorem_id: str
    n: int
    space: FiniteSpace | None
    sets: tuple[int, ...]
    exact_value: int
    predicted: NatInterval | None
    error: str | None
    index: tuple[int, int]

    @property
    def contained(self) -> bool:
        return self.predicted is not None and self.exact_value in self.predicted

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "n": self.n,
            "space": None if self.space is None else self.space.to_json(),
            "sets": list(self.sets),
            "exact_value": self.exact_value,
            "predicted": (
                self.predicted.to_json() if self.predicted is not None else {"error": self.error}
            ),
            "contained": self.contained,
            "index": list(self.index),
        }

    @classmethod
    def from_json(cls, data: dict) -> TheoremCase:
        pred = data["predicted"]
        if isinstance(pred, dict):
            predicted, error = None, pred.get("error")
        else:
            predicted, error = NatInterval.from_json(pred), None
        space = data.get("space")
        case = cls(
            theorem_id=data["theorem_id"],
            n=data["n"],
            space=None if space is None else validate(space["n"], space["opens"]),
            sets=tuple(data["sets"]),
            exact_value=data["exact_value"],
            predicted=predicted,
            error=error,
            index=tuple(data["index"]),
        )
        if "contained" in data and data["contained"] != case.contained:
            raise ValueError(f"inconsistent contained flag in case {data!r}")
        return case


@dataclass
class WitnessSummary:
    """Per-set view of the semi-open bound.

    ``sets_total`` counts semi-open sets with at least one admissible
    witness; ``sets_some`` those where some witness size makes the bound
    hold; ``sets_every`` those where every witness does.
    """

    sets_total: int = 0
    sets_some: int = 0
    sets_every: int = 0

    def __add__(self, other: WitnessSummary) -> WitnessSummary:
        return WitnessSummary(
            self.sets_total + other.sets_total,
            self.sets_some + other.sets_some,
            self.sets_every + other.sets_every,
        )

    def to_json(self) -> dict:
        return {
            "sets_total": self.sets_total,
            "sets_existential_contained": self.sets_some,
            "sets_universal_contained": self.sets_every,
        }


@dataclass
class VerificationReport:
    theorem_id: str
    n: int
    hypothesis_reading: str
    cases_total: int = 0
    cases_contained: int = 0
    counterexamples: list[TheoremCase] = field(default_factory=list)
    counterexample_cap: int | None = DEFAULT_CAP
    elapsed: float = 0.0
    inclusion_reading: str | None = None
    spaces_total: int = 0
    spaces_vacuous: int = 0
    witnesses: WitnessSummary | None = None
    shards: int = 1
    shard_index: int | None = None

    @property
    def containment_rate(self) -> float | None:
        if self.cases_total == 0:
            return None
        return self.cases_contained / self.cases_total

    @property
    def n_counterexamples(self) -> int:
        """Number of cases outside their predicted interval (not just the listed ones)."""
        return self.cases_total - self.cases_contained

    @property
    def key(self) -> tuple:
        return (self.theorem_id, self.n, self.hypothesis_reading, self.inclusion_reading)

    @property
    def reading_label(self) -> str:
        if self.inclusion_reading is None:
            return self.hypothesis_reading
        return f"{self.hypothesis_reading}:{self.inclusion_reading}"

    def summary_line(self) -> str:
        rate = self.containment_rate
        pct = "n/a" if rate is None else f"{100 * rate:.1f}%"
        return (
            f"{self.theorem_id} n={self.n} reading={self.reading_label} "
            f"{self.cases_contained}/{self.cases_total} contained ({pct})"
        )

    def to_json(self, include_elapsed: bool = True) -> dict:
        data = {
            "theorem_id": self.theorem_id,
            "n": self.n,
            "hypothesis_reading": self.hypothesis_reading,
            "inclusion_reading": self.inclusion_reading,
            "cases_total": self.cases_total,
            "cases_contained": self.cases_contained,
            "containment_rate": self.containment_rate,
            "n_counterexamples": self.n_counterexamples,
            "spaces_total": self.spaces_total,
            "spaces_vacuous": self.spaces_vacuous,
            "counterexample_cap": self.counterexample_cap,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "witnesses": None if self.witnesses is None else self.witnesses.to_json(),
            "shards": self.shards,
            "shard_index": self.shard_index,
        }
        if include_elapsed:
            data["elapsed"] = self.elapsed
        return data

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        w = data.get("witnesses")
        return cls(
            theorem_id=data["theorem_id"],
            n=data["n"],
            hypothesis_reading=data["hypothesis_reading"],
            cases_total=data["cases_total"],
            cases_contained=data["cases_contained"],
            counterexamples=[TheoremCase.from_json(c) for c in data["counterexamples"]],
            counterexample_cap=data.get("counterexample_cap", DEFAULT_CAP),
            elapsed=data.get("elapsed", 0.0),
            inclusion_reading=data.get("inclusion_reading"),
            spaces_total=data.get("spaces_total", 0),
            spaces_vacuous=data.get("spaces_vacuous", 0),
            witnesses=None if w is None else WitnessSummary(
                w["sets_total"], w["sets_existential_contained"], w["sets_universal_contained"]
            ),
            shards=data.get("shards", 1),
            shard_index=data.get("shard_index"),
        )

    def csv_row(self) -> dict:
        rate = self.containment_rate
        return {
            "theorem_id": self.theorem_id,
            "n": self.n,
            "reading": self.reading_label,
            "cases_total": self.cases_total,
            "cases_contained": self.cases_contained,
            "containment_rate": "" if rate is None else repr(rate),
            "n_counterexamples": self.n_counterexamples,
        }


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


# -- case generation ---------------------------------------------------------
#
# Each generator yields (sets, exact_value, predict) where predict is a
# zero-argument callable returning the estimator's interval.  Exact values
# come from set operations only; estimators are touched only through predict.

Predict = Callable[[], NatInterval]


def _predict(fn: Predict) -> tuple[NatInterval | None, str | None]:
    try:
        return fn(), None
    except ESTIMATOR_FAILURES as exc:
        return None, exc.reason


def _strict_chains(n: int):
    full = (1 << n) - 1
    for b in range(1 << n):
        if b == full:
            continue
        for a in range(1 << n):
            if a & ~b == 0 and a != b:
                na = from_scalar(popcount(a))
                yield (a, b), popcount(b), (
                    lambda na=na: est_superset_card(SupersetHypothesis(n, na))
                )


def _products(n: int):
    for a in range(1, 1 << n):
        pa = [i for i in range(n) if a >> i & 1]
        for b in range(1 << n):
            pb = [i for i in range(n) if b >> i & 1]
            c = len(set(product(pa, pb)))
            ca, cc = from_scalar(len(pa)), from_scalar(c)
            yield (a, b), len(pb), (
                lambda cc=cc, ca=ca: est_factor_card(ProductHypothesis(cc, ca))
            )


def _set_covers(n: int):
    full = (1 << n) - 1
    x = from_scalar(n)
    for a in range(1 << n):
        for b in range(1 << n):
            if a | b != full:
                continue
            ia, ib = from_scalar(popcount(a)), from_scalar(popcount(b))
            yield (a, b), popcount(a & b), (
                lambda ia=ia, ib=ib: est_intersection_card(UnionSplitHypothesis(x, ia, ib))
            )


def _closure_cases(space: FiniteSpace, inclusion):
    n = space.n
    for a in range(1, 1 << n):
        m = popcount(a)
        if m > n // 2:
            continue
        yield (a,), popcount(space.closure_bits(a)), (
            lambda m=m: est_closure_card(ClosureHypothesis(n, m))
        )


def _interior_cases(space: FiniteSpace, inclusion):
    n = space.n
    sizes = [popcount(c) for c in space.singleton_closures]
    for a in range(1 << n):
        p = popcount(a)
        if 2 * p < n:
            continue
        outside = [x for x in range(n) if not a >> x & 1]
        # the caps k_x are the exact closure sizes; a closed outside point
        # (size 1) means the hypothesis card(cl(x)) >= 2 does not hold
        if any(sizes[x] < 2 for x in outside):
            continue
        caps = {x: sizes[x] for x in outside}
        yield (a,), popcount(space.interior_bits(a)), (
            lambda p=p, caps=caps: est_interior_card(InteriorHypothesis(n, p, caps))
        )


def _semi_open_cases(space: FiniteSpace, inclusion):
    n = space.n
    strict = inclusion == "strict"
    for a in range(1, 1 << n):
        for o in space.nonempty_opens:
            if o & ~a:
                continue
            cl = space.closure_bits(o)
            if a & ~cl:
                continue
            if strict and (o == a or a == cl):
                continue
            k = popcount(o)
            yield (a, o), popcount(a), (
                lambda k=k: est_semiopen_card(SemiOpenHypothesis(n, k))
            )


def _ed_union_cases(space: FiniteSpace, inclusion):
    x = from_scalar(space.n)
    for a in space.nonempty_opens:
        for b in space.nonempty_opens:
            if a & b:
                continue
            ia, ib = from_scalar(popcount(a)), from_scalar(popcount(b))
            yield (a, b), popcount(space.closure_bits(a | b)), (
                lambda ia=ia, ib=ib: est_ed_union_closure_card(EdUnionHypothesis(x, ia, ib))
            )


def _open_cover_cases(space: FiniteSpace, inclusion):
    x = from_scalar(space.n)
    for a in space.nonempty_opens:
        for b in space.nonempty_opens:
            if a | b != space.full:
                continue
            ia, ib = from_scalar(popcount(a)), from_scalar(popcount(b))
            yield (a, b), popcount(a & b), (
                lambda ia=ia, ib=ib: est_hyperconnected_intersection_card(
                    UnionSplitHypothesis(x, ia, ib)
                )
            )


_SET_LEVEL_GENERATORS = {
    "thm2.1": _strict_chains,
    "thm2.2": _products,
    "thm2.3": _set_covers,
}

_SPACE_GENERATORS = {
    "thm3.1": _closure_cases,
    "thm3.2": _interior_cases,
    "thm3.3": _semi_open_cases,
    "thm3.4": _ed_union_cases,
    "thm3.5": _open_cover_cases,
}


def _space_filter(theorem_id: str, reading: str) -> EnumerationFilter:
    if theorem_id == "thm3.5":
        return EnumerationFilter(require_hyperconnected=True)
    return EnumerationFilter(
        require_non_t1=reading == LITERAL,
        require_pointwise_non_t1=reading == POINTWISE,
        require_ed=theorem_id == "thm3.4",
    )


def _normalize(theorem_id: str, n: int, reading: str | None, inclusion: str | None):
    if theorem_id not in THEOREM_IDS:
        raise UnknownTheorem(
            f"unknown theorem {theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}"
        )
    limit = SET_LEVEL_MAX_N if theorem_id in SET_LEVEL else MAX_ENUM_POINTS
    if n > limit:
        raise CarrierTooLarge(f"{theorem_id} is verified for n <= {limit}, got {n}")
    if n < 1:
        raise ValueError(f"carrier size must be at least 1, got {n}")
    if theorem_id in READING_DEPENDENT:
        reading = POINTWISE if reading in (None, NOT_APPLICABLE) else reading
        if reading not in READINGS:
            raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")
    else:
        reading = NOT_APPLICABLE
    if theorem_id == "thm3.3":
        inclusion = inclusion or "non-strict"
        if inclusion not in INCLUSIONS:
            raise ValueError(f"unknown inclusion reading {inclusion!r}; expected one of {INCLUSIONS}")
    else:
        inclusion = None
    return reading, inclusion


def verify_theorem(
    theorem_id: str,
    n: int,
    reading: str | None = None,
    counterexample_cap: int | None = DEFAULT_CAP,
    *,
    inclusion: str | None = None,
    shards: int = 1,
    shard_index: int = 0,
) -> VerificationReport:
    """Sweep every qualifying configuration of ``theorem_id`` on ``n`` points.

    ``reading`` chooses how "non-T1" is read for ``thm3.1``-``thm3.4``
    (``literal-non-t1`` or ``pointwise-non-t1``, the default); the other
    theorems report ``n/a``.  ``inclusion`` applies to ``thm3.3`` only and
    selects whether the witness inclusions ``O ⊆ A ⊆ cl(O)`` are strict.
    ``counterexample_cap=None`` keeps every failing case.

    With ``shards > 1`` only the ``shard_index``-th slice of the enumeration
    is processed; combine slices with :func:`merge_reports`.
    """
    reading, inclusion = _normalize(theorem_id, n, reading, inclusion)
    if shards < 1 or not 0 <= shard_index < shards:
        raise ValueError(f"invalid shard {shard_index} of {shards}")
    started = time.perf_counter()
    report = VerificationReport(
        theorem_id=theorem_id,
        n=n,
        hypothesis_reading=reading,
        inclusion_reading=inclusion,
        counterexample_cap=counterexample_cap,
        shards=shards,
        shard_index=shard_index if shards > 1 else None,
    )

    def record(space, space_idx, case_idx, sets, exact, predict) -> bool:
        predicted, error = _predict(predict)
        case = TheoremCase(theorem_id, n, space, sets, exact, predicted, error,
                           (space_idx, case_idx))
        report.cases_total += 1
        if case.contained:
            report.cases_contained += 1
        elif counterexample_cap is None or len(report.counterexamples) < counterexample_cap:
            report.counterexamples.append(case)
        return case.contained

    if theorem_id in SET_LEVEL:
        for i, (sets, exact, predict) in enumerate(_SET_LEVEL_GENERATORS[theorem_id](n)):
            if i % shards == shard_index:
                record(None, 0, i, sets, exact, predict)
    else:
        gen = _SPACE_GENERATORS[theorem_id]
        if theorem_id == "thm3.3":
            report.witnesses = WitnessSummary()
        for space_idx, space in enumerate_indexed(
            n, _space_filter(theorem_id, reading), shards=shards, shard_index=shard_index
        ):
            report.spaces_total += 1
            seen = 0
            verdicts: dict[int, list[bool]] = {}
            for i, (sets, exact, predict) in enumerate(gen(space, inclusion)):
                ok = record(space, space_idx, i, sets, exact, predict)
                seen += 1
                if report.witnesses is not None:
                    verdicts.setdefault(sets[0], []).append(ok)
            if not seen:
                report.spaces_vacuous += 1
            if report.witnesses is not None:
                report.witnesses += WitnessSummary(
                    len(verdicts),
                    sum(any(v) for v in verdicts.values()),
                    sum(all(v) for v in verdicts.values()),
                )
    report.elapsed = time.perf_counter() - started
    return report


def merge_reports(parts: Sequence[VerificationReport]) -> VerificationReport:
    """Combine shard reports of one (theorem, n, reading) into a single report.

    Counts add up; counterexamples are re-sorted by enumeration index and
    re-capped, so the result does not depend on the order of ``parts``.
    """
    if not parts:
        raise ValueError("nothing to merge")
    keys = {p.key for p in parts}
    if len(keys) != 1:
        raise ValueError(f"cannot merge reports for different runs: {sorted(map(str, keys))}")
    caps = {p.counterexample_cap for p in parts}
    if len(caps) != 1:
        raise ValueError(f"shard reports disagree on the counterexample cap: {caps}")
    cap = caps.pop()
    first = parts[0]
    cases = sorted((c for p in parts for c in p.counterexamples), key=lambda c: c.index)
    witnesses = None
    if any(p.witnesses is not None for p in parts):
        witnesses = WitnessSummary()
        for p in parts:
            if p.witnesses is not None:
                witnesses += p.witnesses
    return VerificationReport(
        theorem_id=first.theorem_id,
        n=first.n,
        hypothesis_reading=first.hypothesis_reading,
        inclusion_reading=first.inclusion_reading,
        cases_total=sum(p.cases_total for p in parts),
        cases_contained=sum(p.cases_contained for p in parts),
        counterexamples=cases if cap is None else cases[:cap],
        counterexample_cap=cap,
        elapsed=sum(p.elapsed for p in parts),
        spaces_total=sum(p.spaces_total for p in parts),
        spaces_vacuous=sum(p.spaces_vacuous for p in parts),
        witnesses=witnesses,
        shards=1,
        shard_index=None,
    )


def thread_count(default: int | None = None) -> int:
    """Worker cap from ``TOPOCARD_THREADS``, falling back to the CPU count."""
    value = os.environ.get("TOPOCARD_THREADS")
    if value:
        try:
            count = int(value)
        except ValueError:
            raise ValueError(f"TOPOCARD_THREADS must be an integer, got {value!r}") from None
        if count < 1:
            raise ValueError(f"TOPOCARD_THREADS must be positive, got {count}")
        return count
    return default or os.cpu_count() or 1


def _run_shard(args) -> VerificationReport:
    theorem_id, n, reading, cap, inclusion, shards, index = args
    return verify_theorem(theorem_id, n, reading, cap, inclusion=inclusion,
                          shards=shards, shard_index=index)


def verify_sharded(
    theorem_id: str,
    n: int,
    reading: str | None = None,
    counterexample_cap: int | None = DEFAULT_CAP,
    *,
    inclusion: str | None = None,
    shards: int = 1,
    workers: int | None = None,
) -> VerificationReport:
    """Run all ``shards`` slices (in a process pool when ``workers > 1``) and merge."""
    jobs = [(theorem_id, n, reading, counterexample_cap, inclusion, shards, i)
            for i in range(shards)]
    workers = min(workers or thread_count(), shards)
    if workers <= 1:
        parts = [_run_shard(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, jobs))
    return merge_reports(parts)


def run_plan(
    n_max: int,
    readings: Sequence[str] = READINGS,
    inclusions: Sequence[str] = INCLUSIONS,
    theorems: Sequence[str] = THEOREM_IDS,
) -> Iterator[tuple[str, int, str | None, str | None]]:
    """The (theorem, n, reading, inclusion) runs of :func:`verify_all`, in report order."""
    for theorem_id in theorems:
        for n in range(1, n_max + 1):
            if theorem_id in READING_DEPENDENT:
                for reading in readings:
                    if theorem_id == "thm3.3":
                        for inclusion in inclusions:
                            yield theorem_id, n, reading, inclusion
                    else:
                        yield theorem_id, n, reading, None
            else:
                yield theorem_id, n, None, None


def verify_all(
    n_max: int,
    readings: Sequence[str] = READINGS,
    counterexample_cap: int | None = DEFAULT_CAP,
    *,
    inclusions: Sequence[str] = INCLUSIONS,
    shards: int = 1,
    workers: int | None = 1,
) -> list[VerificationReport]:
    """Verify every theorem for every ``n <= n_max`` and every requested reading."""
    if n_max > MAX_ENUM_POINTS:
        raise CarrierTooLarge(f"verify_all supports n_max <= {MAX_ENUM_POINTS}, got {n_max}")
    return [
        verify_sharded(t, n, r, counterexample_cap, inclusion=inc, shards=shards,
                       workers=workers)
        for t, n, r, inc in run_plan(n_max, readings, inclusions)
    ]
