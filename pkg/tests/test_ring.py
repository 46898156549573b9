import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import polys
from largest_singleton.ring import (
    LAM,
    ONE,
    Y,
    ZERO,
    BudgetError,
    Poly,
    arith,
    parse,
    poly_binomial,
    poly_pow,
    substitute,
    t,
    to_text,
)

t1, t2, t3 = t(1), t(2), t(3)


def test_additive_inverse():
    assert arith(t1, -t1, "add") == ZERO
    assert len(arith(t1, -t1, "add")) == 0


def test_difference_of_squares():
    assert arith(t1 + t2, t1 - t2, "mul") == t1 ** 2 - t2 ** 2


def test_hand_expansion():
    # doubles as A_{2,2} - t1^3 = t1*t2 (all-singleton contribution removed)
    assert (t1 ** 2 + t2) * t1 - t1 * t1 ** 2 == t1 * t2


def test_mul_term_count_bounded():
    a = t1 + t2 + t3
    b = Y + LAM
    assert len(a * b) <= len(a) * len(b)


def test_pow():
    assert poly_pow(t1, 0) == ONE
    assert poly_pow(t1 + 1, 2) == t1 ** 2 + 2 * t1 + 1
    assert poly_pow(Y + 1, 3) == Y ** 3 + 3 * Y ** 2 + 3 * Y + 1
    with pytest.raises(ValueError):
        poly_pow(t1, -1)


def test_substitute_examples():
    assert substitute(t1 * t2, {"t1": 1, "t2": 1}) == ONE
    assert substitute(t1 * t2, {"t2": math.factorial(1)}) == t1
    # Y_3(1,1,1) = 5: the five partitions of [3]
    assert substitute(t1 ** 3 + 3 * t1 * t2 + t3, {f"t{j}": 1 for j in (1, 2, 3)}) == 5


def test_poly_binomial_examples():
    assert poly_binomial(LAM, 0) == ONE
    assert poly_binomial(LAM, 2) == (LAM ** 2 - LAM) * Fraction(1, 2)
    assert poly_binomial(LAM + 1, 1) == LAM + 1


@pytest.mark.parametrize("c", range(0, 9))
def test_poly_binomial_integer_top(c):
    for k in range(c + 1):
        assert poly_binomial(c, k) == math.comb(c, k)


def test_budget_is_enforced():
    assert t(16) == Poly.var("t16")
    with pytest.raises(BudgetError):
        t(17)
    assert t(17, budget=20) == Poly.var("t17")


def test_canonical_text():
    p = 3 * t1 ** 2 * t2 - Fraction(1, 2) * Y + 4
    assert to_text(p) == "3*t1^2*t2 - 1/2*y + 4"
    assert to_text(ZERO) == "0"
    assert to_text(-t1) == "-t1"
    # graded lex with t1 < t2 < t3 < lam < y
    assert to_text(t1 * t3 + t2 ** 2) == "t1*t3 + t2^2"
    assert to_text(Y + LAM + t3 + Y * t1) == "t1*y + y + lam + t3"


def test_equality_with_scalars():
    assert Poly.const(Fraction(4, 2)) == 2
    assert Poly.const(0) == ZERO
    assert hash(Poly.const(Fraction(6, 3))) == hash(Poly.const(2))


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@settings(max_examples=300, deadline=None)
@given(polys())
def test_parse_print_roundtrip(p):
    assert parse(to_text(p)) == p
    assert to_text(parse(to_text(p))) == to_text(p)


@settings(max_examples=200, deadline=None)
@given(polys(max_terms=3), polys(max_terms=2, max_exp=1), polys(max_terms=2, max_exp=1),
       polys(max_terms=2, max_exp=1))
def test_substitution_composes(p, s1, s2, tau_y):
    # sigma acts on t1, t2; tau acts on y; domains are disjoint
    sigma = {"t1": s1, "t2": s2}
    tau = {"y": tau_y}
    composed = {v: substitute(val, tau) for v, val in sigma.items()}
    composed.update(tau)
    assert substitute(substitute(p, sigma), tau) == substitute(p, composed)
