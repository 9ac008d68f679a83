import pytest

from conftest import discrete, families_passing_validate, indiscrete
from topocard.enumeration import (
    EnumerationFilter,
    all_spaces,
    enumerate_indexed,
    enumerate_preorders,
    enumerate_spaces,
    enumerate_subset_pairs,
)
from topocard.errors import CarrierTooLarge
from topocard.topology import classify, is_hyperconnected


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29)])
def test_counts_match_validate_oracle(n, count):
    oracle = families_passing_validate(n)
    emitted = [frozenset(s.opens) for s in enumerate_spaces(n)]
    assert len(oracle) == count
    assert len(emitted) == len(set(emitted)) == count
    assert set(emitted) == oracle


def test_counts_up_to_five():
    assert [len(all_spaces(n)) for n in range(1, 6)] == [1, 4, 29, 355, 6942]
    assert len(enumerate_preorders(5)) == 6942


def test_too_large():
    with pytest.raises(CarrierTooLarge):
        list(enumerate_spaces(6))


def test_emission_order_is_lexicographic():
    # rows of the relation matrix are singleton closures; off-diagonal cells
    # read row-major must increase strictly
    for n in (2, 3, 4):
        keys = []
        for closures in enumerate_preorders(n):
            keys.append(tuple(closures[x] >> y & 1 for x in range(n) for y in range(n) if x != y))
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


def test_emission_is_deterministic():
    assert list(enumerate_spaces(3)) == list(enumerate_spaces(3))


def test_filters_match_classification():
    for n in (2, 3, 4):
        every = list(enumerate_spaces(n))
        for flag, attr in [
            ("require_non_t1", "t1"),
            ("require_pointwise_non_t1", "pointwise_non_t1"),
            ("require_ed", "extremally_disconnected"),
            ("require_hyperconnected", "hyperconnected"),
            ("require_t0", "t0"),
        ]:
            kept = list(enumerate_spaces(n, EnumerationFilter(**{flag: True})))
            want = [s for s in every if getattr(classify(s), attr) != (attr == "t1")]
            assert kept == want, flag


def test_hyperconnected_filter_n3():
    kept = list(enumerate_spaces(3, EnumerationFilter(require_hyperconnected=True)))
    assert kept and all(is_hyperconnected(s) for s in kept)


@pytest.mark.parametrize("shards", [2, 3, 7])
def test_shards_partition_stream(shards):
    whole = list(enumerate_indexed(4))
    parts = [list(enumerate_indexed(4, shards=shards, shard_index=i)) for i in range(shards)]
    merged = sorted(x for part in parts for x in part)
    assert [i for i, _ in merged] == [i for i, _ in whole]
    assert [s for _, s in merged] == [s for _, s in whole]


def test_bad_shard():
    with pytest.raises(ValueError):
        list(enumerate_spaces(2, shards=2, shard_index=2))


# -- subset pairs -------------------------------------------------------------

def test_disjoint_open_pairs_discrete():
    assert list(enumerate_subset_pairs(discrete(2), "open-pairs-disjoint")) == [(1, 2), (2, 1)]


def test_open_covers_indiscrete():
    assert list(enumerate_subset_pairs(indiscrete(2), "open-covers")) == [(3, 3)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_subsets_count(n):
    assert len(list(enumerate_subset_pairs(discrete(n), "all-subsets"))) == 4 ** n


def test_pair_modes_by_brute_force():
    for space in all_spaces(3):
        opens = [o for o in space.opens if o]
        disjoint = [(a, b) for a in opens for b in opens if not a & b]
        covers = [(a, b) for a in opens for b in opens if a | b == 7]
        assert list(enumerate_subset_pairs(space, "open-pairs-disjoint")) == disjoint
        assert list(enumerate_subset_pairs(space, "open-covers")) == covers


def test_unknown_mode():
    with pytest.raises(ValueError):
        list(enumerate_subset_pairs(discrete(1), "everything"))
