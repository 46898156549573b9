import math

import pytest

from largest_singleton.combinatorics import WeightFamily, derangement
from largest_singleton.partitions import oracle_A
from largest_singleton.ring import substitute, t
from largest_singleton.singleton import (
    PUBLISHED_TABLES,
    DomainError,
    P_ROUTES,
    Q_ROUTES,
    a_explicit,
    a_recurrence,
    a_umbral,
    build_triangle,
    l_explicit,
    p_explicit,
    q_formulas,
)

t1, t2 = t(1), t(2)


def test_recurrence_examples(symbolic, perm, inv):
    assert a_recurrence(1, 1, symbolic) == t1 ** 2
    assert a_recurrence(5, 2, perm) == 64
    assert a_recurrence(8, 8, inv) == 764


def test_explicit_examples(symbolic, perm, forest):
    assert a_explicit(1, 1, symbolic) == t1 * t2
    assert a_explicit(4, 0, perm) == 9
    assert a_explicit(2, 2, forest) == 96


def test_umbral_examples(symbolic, perm):
    assert a_umbral(1, 1, symbolic) == t1 * t2
    for n in range(7):
        assert a_umbral(0, n, perm) == math.factorial(n)
    assert a_umbral(6, 0, perm) == 265


def test_p_explicit_examples():
    assert p_explicit(3, 3, "derangement") == 426
    assert p_explicit(0, 5) == 120
    assert p_explicit(5, 0) == 44


def test_q_formulas_examples():
    assert q_formulas(3, 3, "involution_sum") == 24
    assert q_formulas(0, 8) == 764
    assert q_formulas(5, 0) == 0


def test_l_explicit_examples():
    assert l_explicit(2, 0) == 2
    assert l_explicit(0, 6) == 16807
    assert l_explicit(3, 0) == 9


@pytest.mark.parametrize("name,n_max", [("permutation", 6), ("involution", 8), ("forest", 6)])
def test_published_tables(name, n_max):
    tri = build_triangle(WeightFamily(name), n_max)
    assert tri.mismatches(PUBLISHED_TABLES[name]) == []
    assert sum(len(r) for r in PUBLISHED_TABLES[name]) == (n_max + 1) * (n_max + 2) // 2


@pytest.mark.parametrize("n", range(10))
def test_triple_agreement(n, symbolic):
    for k in range(n + 1):
        r = a_recurrence(n, k, symbolic)
        assert r == a_explicit(n - k, k, symbolic)
        assert r == a_umbral(n - k, k, symbolic)


@pytest.mark.parametrize("n", range(9))
def test_oracle_agreement(n, symbolic):
    for k in range(n + 1):
        assert a_recurrence(n, k, symbolic) == oracle_A(n, k, symbolic)


@pytest.mark.parametrize("name", ["permutation", "involution", "forest"])
def test_specialization_coherence(name, symbolic):
    w = WeightFamily(name)
    bindings = w.substitution(9)
    for n in range(9):
        for k in range(n + 1):
            assert substitute(a_recurrence(n, k, symbolic), bindings) == a_recurrence(n, k, w)


def test_custom_family_matches_substitution(symbolic):
    w = WeightFamily.from_list([2, -1, 3, 0, 5, 1, 1, 1, 1])
    bindings = w.substitution(9)
    for n in range(8):
        for k in range(n + 1):
            assert substitute(a_recurrence(n, k, symbolic), bindings) == a_recurrence(n, k, w)
            assert a_recurrence(n, k, w) == a_umbral(n - k, k, w)


@pytest.mark.parametrize("name", ["permutation", "involution", "forest"])
def test_rows_increase_from_column_one(name):
    w = WeightFamily(name)
    for n in range(13):
        row = [a_recurrence(n, k, w).constant_value() for k in range(n + 1)]
        assert all(a <= b for a, b in zip(row[1:], row[2:]))
        # column 0 to 1 is weakly increasing too for these nonnegative families
        if n:
            assert row[0] <= row[1]


def test_p_and_q_routes_agree():
    for n in range(15):
        for k in range(15 - n):
            ps = {p_explicit(n, k, r) for r in P_ROUTES}
            qs = {q_formulas(n, k, r) for r in Q_ROUTES}
            assert len(ps) == 1 and len(qs) == 1
            assert ps.pop() == a_recurrence(n + k, k, WeightFamily("permutation"))
            assert qs.pop() == a_recurrence(n + k, k, WeightFamily("involution"))


def test_l_explicit_matches_triangle(forest):
    for n in range(12):
        for k in range(12 - n):
            assert l_explicit(n, k) == a_recurrence(n + k, k, forest)


def test_first_offdiagonal_permutation(perm):
    for k in range(15):
        assert a_recurrence(k + 1, 1, perm) == derangement(k) + derangement(k + 1)


def test_domain_errors(symbolic):
    with pytest.raises(DomainError):
        a_recurrence(2, 3, symbolic)
    with pytest.raises(DomainError):
        a_recurrence(-1, 0, symbolic)
    with pytest.raises(DomainError):
        a_explicit(-1, 0, symbolic)
    with pytest.raises(ValueError):
        build_triangle(WeightFamily("permutation"), 61)


def test_triangle_indexing(perm):
    tri = build_triangle(perm, 6)
    assert tri[6, 0] == 265 and tri[5, 2] == 64
    assert tri.n_max == 6
    assert sum(1 for _ in tri.entries()) == 28
    with pytest.raises(DomainError):
        tri[3, 4]
