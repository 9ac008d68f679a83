"""Command-line front end: ``topocard {enumerate,classify,estimate,verify}``.

Exit codes: 0 success, 1 internal error, 2 usage or input error,
3 estimator hypothesis failure, 4 containment violation under
``verify --expect-containment``.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import OrderedDict
from typing import Sequence

from .enumeration import EnumerationFilter, enumerate_spaces
from .errors import ESTIMATOR_FAILURES, CarrierTooLarge, NotATopology, TopocardError
from .estimators import THEOREM_IDS, estimate
from .intervals import NatInterval
from .topology import FiniteSpace, classify, popcount
from .verifier import (
    DEFAULT_CAP,
    INCLUSIONS,
    READINGS,
    VerificationReport,
    merge_reports,
    reports_to_csv,
    run_plan,
    thread_count,
    verify_sharded,
    verify_theorem,
)

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_VIOLATION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _interval(text: str) -> NatInterval:
    """Parse ``lo,hi`` or a bare scalar ``k``."""
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi' or an integer, got {text!r}") from None
    if len(values) == 1:
        values *= 2
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi' or an integer, got {text!r}")
    try:
        return NatInterval(*values)
    except TopocardError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cap(text: str) -> int | None:
    if text.lower() in ("none", "all", "-1"):
        return None
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("cap must be >= 0, or 'none' for unlimited")
    return value


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- enumerate ---------------------------------------------------------------

def cmd_enumerate(args) -> int:
    filt = EnumerationFilter(
        require_non_t1=args.non_t1,
        require_pointwise_non_t1=args.pointwise_non_t1,
        require_ed=args.ed,
        require_hyperconnected=args.hyperconnected,
        require_t0=args.t0,
    )
    lines = [
        space.dumps() + "\n"
        for space in enumerate_spaces(args.n, filt, shards=args.shards, shard_index=args.shard_index)
    ]
    _write(args.output, "".join(lines))
    return EXIT_OK


# -- classify ----------------------------------------------------------------

def cmd_classify(args) -> int:
    if args.input in (None, "-"):
        raw = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            raw = fh.read()
    try:
        space = FiniteSpace.from_json(raw)
    except NotATopology as exc:
        print(f"NotATopology: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {"space": space.to_json()}
    out.update(classify(space).to_json())
    out["singleton_closure_sizes"] = [popcount(c) for c in space.singleton_closures]
    _write(args.output, json.dumps(out) + "\n")
    return EXIT_OK


# -- estimate ----------------------------------------------------------------

def _require(args, theorem: str, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{theorem} requires {', '.join(missing)}")


def _carrier(args, theorem: str) -> NatInterval:
    if args.x is not None:
        return args.x
    if args.n is not None:
        return NatInterval(args.n, args.n)
    raise UsageError(f"{theorem} requires --x (or --n for an exact carrier size)")


def _hypothesis_params(args) -> dict:
    t = args.theorem
    if t == "thm2.1":
        _require(args, t, "n", "a")
        return {"n": args.n, "a": args.a}
    if t == "thm2.2":
        _require(args, t, "c", "a")
        return {"c": args.c, "a": args.a}
    if t in ("thm2.3", "thm3.4", "thm3.5"):
        _require(args, t, "a", "b")
        return {"x": _carrier(args, t), "a": args.a, "b": args.b}
    if t == "thm3.1":
        _require(args, t, "n", "m")
        return {"n": args.n, "m": args.m}
    if t == "thm3.2":
        _require(args, t, "n", "p")
        return {"n": args.n, "p": args.p, "k_bounds": args.k_bounds or []}
    if t == "thm3.3":
        _require(args, t, "n", "k")
        return {"n": args.n, "k": args.k}
    raise UsageError(f"unknown theorem {t!r}")


def cmd_estimate(args) -> int:
    params = _hypothesis_params(args)
    try:
        interval = estimate(args.theorem, **params)
    except ESTIMATOR_FAILURES as exc:
        print(json.dumps({"theorem": args.theorem, "error": exc.reason, "message": str(exc)}))
        return EXIT_HYPOTHESIS
    print(json.dumps({"theorem": args.theorem, "interval": interval.to_json()}))
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _load_reports(paths: Sequence[str]) -> list[VerificationReport]:
    reports = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = [data]
        reports.extend(VerificationReport.from_json(d) for d in data)
    return reports


def _merge_loaded(reports: list[VerificationReport]) -> list[VerificationReport]:
    groups: OrderedDict[tuple, list[VerificationReport]] = OrderedDict()
    for r in reports:
        groups.setdefault(r.key, []).append(r)
    return [merge_reports(parts) for parts in groups.values()]


def _verify_runs(args) -> list[VerificationReport]:
    readings = READINGS if args.reading == "both" else (args.reading,)
    inclusions = INCLUSIONS if args.inclusion == "both" else (args.inclusion,)
    if args.all:
        if args.n_max is None:
            raise UsageError("--all requires --n-max")
        theorems = THEOREM_IDS
    else:
        if args.theorem is None:
            raise UsageError("verify requires --theorem or --all")
        theorems = (args.theorem,)
    if args.n is not None:
        plan = [p for p in run_plan(args.n, readings, inclusions, theorems) if p[1] == args.n]
    elif args.n_max is not None:
        plan = list(run_plan(args.n_max, readings, inclusions, theorems))
    else:
        raise UsageError("verify requires --n or --n-max")

    reports = []
    for theorem_id, n, reading, inclusion in plan:
        if args.shard_index is not None:
            reports.append(verify_theorem(
                theorem_id, n, reading, args.cap, inclusion=inclusion,
                shards=args.shards, shard_index=args.shard_index,
            ))
        else:
            reports.append(verify_sharded(
                theorem_id, n, reading, args.cap, inclusion=inclusion,
                shards=args.shards, workers=args.workers or thread_count(),
            ))
    return reports


def cmd_verify(args) -> int:
    if args.merge:
        reports = _merge_loaded(_load_reports(args.merge))
    else:
        reports = _verify_runs(args)

    as_json = json.dumps([r.to_json(include_elapsed=not args.no_timing) for r in reports],
                         indent=2) + "\n"
    as_csv = reports_to_csv(reports)
    if args.json:
        _write(args.json, as_json)
    if args.csv:
        _write(args.csv, as_csv)
    if args.output or not (args.json or args.csv):
        _write(args.output, as_json if args.format == "json" else as_csv)
    for r in reports:
        print(r.summary_line(), file=sys.stderr)

    if args.expect_containment and any(r.cases_contained < r.cases_total for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topocard",
        description="Interval cardinality estimators for finite topological spaces, "
                    "with exhaustive verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list every labeled topology on n points as NDJSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--non-t1", action="store_true", help="keep spaces that are not T1")
    p.add_argument("--pointwise-non-t1", action="store_true", help="keep spaces with no closed point")
    p.add_argument("--ed", action="store_true", help="keep extremally disconnected spaces")
    p.add_argument("--hyperconnected", action="store_true")
    p.add_argument("--t0", action="store_true")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-index", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classify a space read as JSON from stdin")
    p.add_argument("--input", "-i", help="read the space from a file instead of stdin")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("estimate", help="evaluate one estimator")
    p.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    p.add_argument("--n", type=int, help="carrier cardinality")
    p.add_argument("--m", type=int, help="card(A) (thm3.1)")
    p.add_argument("--p", type=int, help="card(A) (thm3.2)")
    p.add_argument("--k", type=int, help="card(O) of the witness open (thm3.3)")
    p.add_argument("--k-bounds", type=_int_list, help="closure caps k_x, comma-separated (thm3.2)")
    for name in ("a", "b", "c", "x"):
        p.add_argument(f"--{name}", type=_interval, help="interval 'lo,hi' or scalar")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify", help="sweep theorems against exact cardinalities")
    target = p.add_mutually_exclusive_group()
    target.add_argument("--theorem", choices=THEOREM_IDS)
    target.add_argument("--all", action="store_true")
    p.add_argument("--n", type=int, help="verify at exactly this carrier size")
    p.add_argument("--n-max", type=int, help="verify every carrier size up to this one")
    p.add_argument("--reading", choices=(*READINGS, "both"), default="both",
                   help="how 'non-T1' is read for thm3.1-thm3.4")
    p.add_argument("--inclusion", choices=(*INCLUSIONS, "both"), default="both",
                   help="witness inclusion reading for thm3.3")
    p.add_argument("--cap", type=_cap, default=DEFAULT_CAP,
                   help="counterexamples kept per report ('none' keeps all)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write the report in --format here")
    p.add_argument("--json", help="also write the JSON reports here")
    p.add_argument("--csv", help="also write the CSV summary here")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-index", type=int,
                   help="run only this shard (omit to run all shards and merge)")
    p.add_argument("--workers", type=int, help="process count (default: TOPOCARD_THREADS or CPUs)")
    p.add_argument("--merge", nargs="+", metavar="REPORT",
                   help="merge shard report JSON files instead of running")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times from JSON")
    p.add_argument("--expect-containment", action="store_true",
                   help="exit 4 if any case falls outside its predicted interval")
    p.set_defaults(func=cmd_verify)
    return parser


def _check_shards(parser, args) -> None:
    shards = getattr(args, "shards", 1)
    index = getattr(args, "shard_index", None)
    if shards < 1:
        parser.error("--shards must be >= 1")
    if index is not None and not 0 <= index < shards:
        parser.error("--shard-index must satisfy 0 <= index < shards")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_shards(parser, args)
    try:
        return args.func(args)
    except (UsageError, CarrierTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TopocardError as exc:
        print(f"{exc.reason}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - report and map to the internal-error code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
