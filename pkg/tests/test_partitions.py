import pytest

from largest_singleton.combinatorics import WeightFamily, complete_bell
from largest_singleton.partitions import (
    OracleCapError,
    SetPartition,
    enumerate_partitions,
    largest_singleton,
    oracle_A,
    weight,
)
from largest_singleton.ring import t

t1, t2 = t(1), t(2)


def test_enumerate_counts():
    assert [str(p) for p in enumerate_partitions(1)] == ["{1}"]
    assert sum(1 for _ in enumerate_partitions(3)) == 5
    assert sum(1 for _ in enumerate_partitions(6)) == 203


def test_enumerate_is_duplicate_free():
    seen = {tuple(tuple(b) for b in p.blocks) for p in enumerate_partitions(7)}
    assert len(seen) == 877


@pytest.mark.parametrize("n", range(11))
def test_count_invariant(n):
    assert sum(1 for _ in enumerate_partitions(n)) == complete_bell(n, WeightFamily.ones(16))


def test_rgs_decoding():
    p = SetPartition((0, 1, 1))
    assert p.blocks == [[1], [2, 3]]
    assert str(p) == "{1} {2,3}"


def test_weight_examples(symbolic, forest, inv):
    assert weight(SetPartition((0, 1, 1)), symbolic) == t1 * t2
    assert weight(SetPartition((0, 0, 0)), forest) == 9
    assert weight(SetPartition((0, 1)), inv) == 1


def test_largest_singleton_examples():
    assert largest_singleton(SetPartition((0, 1, 1))) == 1
    assert largest_singleton(SetPartition((0, 0, 0))) is None
    assert largest_singleton(SetPartition((0, 1, 2))) == 3


def test_oracle_examples(symbolic, perm):
    assert oracle_A(2, 0, symbolic) == t1 * t2
    assert oracle_A(1, 0, symbolic) == 0
    assert oracle_A(2, 2, perm) == 2


def test_oracle_matches_direct_filtering(symbolic):
    # independent of the signature tables: filter the raw enumeration
    for n in range(6):
        for k in range(n + 1):
            direct = sum((weight(p, symbolic) for p in enumerate_partitions(n + 1)
                          if largest_singleton(p) == k + 1), t(1) * 0)
            assert oracle_A(n, k, symbolic) == direct


@pytest.mark.parametrize("n", range(9))
def test_exhaustive_split(n, symbolic):
    total = complete_bell(n + 1, symbolic, suppress_singletons=True)
    for k in range(n + 1):
        total = total + oracle_A(n, k, symbolic)
    assert total == complete_bell(n + 1, symbolic)


@pytest.mark.parametrize("n", range(9))
def test_diagonal_and_first_column(n, symbolic):
    assert oracle_A(n, n, symbolic) == t1 * complete_bell(n, symbolic)
    assert oracle_A(n, 0, symbolic) == t1 * complete_bell(n, symbolic, suppress_singletons=True)


def test_cap(monkeypatch, symbolic):
    with pytest.raises(OracleCapError):
        oracle_A(5, 0, symbolic, cap=5)
    monkeypatch.setenv("PW_ORACLE_CAP", "4")
    with pytest.raises(OracleCapError):
        list(enumerate_partitions(5))
    assert oracle_A(3, 0, symbolic) == t1 * complete_bell(3, symbolic, suppress_singletons=True)


def test_oracle_domain(symbolic):
    with pytest.raises(ValueError):
        oracle_A(2, 3, symbolic)
