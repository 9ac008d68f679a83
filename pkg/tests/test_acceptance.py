"""Acceptance gate: one test per exit criterion, exact match everywhere.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import itertools
import json
import time

import pytest

from conftest import families_passing_validate, naive_closure
from topocard.cli import main
from topocard.enumeration import all_spaces, enumerate_preorders, enumerate_spaces
from topocard.errors import DivisorContainsZero, EmptyAfterClamp
from topocard.intervals import NatInterval, SignedInterval, add, clamp_nat, div_card, mul, sub
from topocard.topology import (
    PointSet,
    is_extremally_disconnected,
    is_hyperconnected,
    is_semi_open,
    validate,
)
from topocard.verifier import merge_reports, verify_theorem

criterion = pytest.mark.criterion


def stable(report):
    return report.to_json(include_elapsed=False)


@criterion(1, "interval arithmetic soundness (endpoints <= 10, < 10 s)")
def test_interval_soundness():
    started = time.perf_counter()
    intervals = [NatInterval(lo, hi) for lo in range(11) for hi in range(lo, 11)]
    for a, b in itertools.product(intervals, repeat=2):
        got = add(a, b)
        assert all(x + y in got for x in a for y in b)
        got = mul(a, b)
        assert all(x * y in got for x in a for y in b)
        try:
            got = div_card(a, b)
        except DivisorContainsZero:
            assert b.lo == 0
            continue
        except EmptyAfterClamp:
            assert not any(y and x % y == 0 for x in a for y in b)
            continue
        assert all(x // y in got for x in a for y in b if y and x % y == 0)
    assert sub(NatInterval(2, 4), NatInterval(1, 3)) == SignedInterval(-1, 3)
    assert clamp_nat(sub(NatInterval(2, 4), NatInterval(1, 3))) == NatInterval(0, 3)
    assert time.perf_counter() - started < 10


@criterion(2, "topology enumeration vs validate() oracle (1, 4, 29, 355; 6942 at n=5; < 2 min)")
def test_enumeration_oracle():
    started = time.perf_counter()
    for n, count in [(1, 1), (2, 4), (3, 29), (4, 355)]:
        oracle = families_passing_validate(n)
        emitted = [frozenset(s.opens) for s in enumerate_spaces(n)]
        assert len(oracle) == len(emitted) == len(set(emitted)) == count
        assert set(emitted) == oracle
    spaces = list(enumerate_spaces(5))
    assert len(enumerate_preorders(5)) == 6942
    assert len({s.opens for s in spaces}) == 6942
    for s in spaces:
        assert validate(5, s.opens) == s
    assert time.perf_counter() - started < 120


@criterion(3, "closure/interior operator laws on every subset of every space, n <= 4")
def test_operator_laws():
    violations = 0
    for n in range(1, 5):
        full = (1 << n) - 1
        for space in all_spaces(n):
            cl = [space.closure_bits(a) for a in range(1 << n)]
            for a in range(1 << n):
                c = cl[a]
                violations += a & ~c != 0
                violations += cl[c] != c
                violations += c != naive_closure(n, space.opens, a)
                violations += space.interior_bits(a) != full & ~cl[full & ~a]
                union = 0
                for x in range(n):
                    if a >> x & 1:
                        union |= cl[1 << x]
                violations += union != c
                for b in range(1 << n):
                    if a & ~b == 0:
                        violations += c & ~cl[b] != 0
    assert violations == 0


@criterion(4, "semi-open, E.D. and hyperconnected characterizations agree, n <= 4")
def test_characterizations():
    violations = 0
    for n in range(1, 5):
        for space in all_spaces(n):
            opens = space.opens
            for a in range(1 << n):
                by_witness = any(
                    o & ~a == 0 and a & ~space.closure_bits(o) == 0 for o in opens if o
                ) or a == 0
                violations += by_witness != is_semi_open(space, PointSet(a, n))[0]
            ed = all(
                space.closure_bits(u) & space.closure_bits(v) == 0
                for u in opens for v in opens if u & v == 0
            )
            violations += ed != is_extremally_disconnected(space)
            nonempty = [o for o in opens if o]
            pairwise = all(u & v for u in nonempty for v in nonempty)
            violations += pairwise != is_hyperconnected(space)
    assert violations == 0


@criterion(5, "thm2.1/2.2/2.3 (bare sets, n <= 6) and thm3.5 (n <= 4): 100% containment")
def test_sound_theorems():
    for theorem in ("thm2.1", "thm2.2", "thm2.3"):
        for n in range(1, 7):
            r = verify_theorem(theorem, n)
            assert r.cases_contained == r.cases_total, r.summary_line()
            if n >= 2:
                assert r.cases_total > 0
    for n in range(1, 5):
        r = verify_theorem("thm3.5", n)
        assert r.cases_total > 0 and r.cases_contained == r.cases_total, r.summary_line()


@criterion(6, "thm3.1 and thm3.3 counterexamples flagged; thm3.1-3.4 rates reproducible")
def test_falsifiable_theorems():
    r = verify_theorem("thm3.1", 4, "pointwise-non-t1", None)
    assert r.cases_contained < r.cases_total
    hits = [c for c in r.counterexamples
            if c.space.to_json() == {"n": 4, "opens": [0, 3, 12, 15]} and c.sets == (0b0011,)]
    assert len(hits) == 1
    assert hits[0].exact_value == 2 and hits[0].predicted == NatInterval(4, 4)

    for inclusion in ("non-strict", "strict"):
        r = verify_theorem("thm3.3", 3, "pointwise-non-t1", None, inclusion=inclusion)
        hits = [c for c in r.counterexamples
                if c.space.to_json() == {"n": 3, "opens": [0, 1, 7]}
                and c.sets == (0b011, 0b001)]
        assert len(hits) == 1
        case = hits[0]
        assert case.predicted is None and case.error == "EmptyEstimate"
        assert case.exact_value == 2
        assert is_semi_open(case.space, PointSet(0b011, 3))[0]

    for theorem in ("thm3.1", "thm3.2", "thm3.3", "thm3.4"):
        for n in (2, 3, 4):
            for reading in ("literal-non-t1", "pointwise-non-t1"):
                first = verify_theorem(theorem, n, reading)
                again = verify_theorem(theorem, n, reading)
                sharded = merge_reports(
                    [verify_theorem(theorem, n, reading, shards=3, shard_index=i)
                     for i in range(3)]
                )
                text = json.dumps(stable(first))
                assert text == json.dumps(stable(again)) == json.dumps(stable(sharded))


@criterion(7, "thm3.1 n=4 with 1, 2, 4 shards gives identical totals and counterexamples")
def test_sharding_equivalence():
    for cap in (10, None):
        runs = []
        for shards in (1, 2, 4):
            parts = [verify_theorem("thm3.1", 4, "pointwise-non-t1", cap,
                                    shards=shards, shard_index=i) for i in range(shards)]
            merged = merge_reports(parts)
            runs.append((merged.cases_total, merged.cases_contained,
                         [c.to_json() for c in merged.counterexamples]))
        assert runs[0] == runs[1] == runs[2]


@criterion(8, "CLI estimate examples: thm2.2 -> [3,6], thm3.1 -> [4,6], thm3.3 k=1 -> exit 3")
def test_cli_estimate_contract(capsys):
    assert main(["estimate", "--theorem", "thm2.2", "--c", "12,20", "--a", "3,4"]) == 0
    assert json.loads(capsys.readouterr().out) == {"theorem": "thm2.2", "interval": [3, 6]}
    assert main(["estimate", "--theorem", "thm3.1", "--n", "6", "--m", "2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"theorem": "thm3.1", "interval": [4, 6]}
    assert main(["estimate", "--theorem", "thm3.3", "--n", "7", "--k", "1"]) == 3
    assert json.loads(capsys.readouterr().out)["error"] == "EmptyEstimate"
