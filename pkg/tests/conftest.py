import pytest
from hypothesis import strategies as st

from largest_singleton.combinatorics import WeightFamily
from largest_singleton.ring import Poly

VARS = ["t1", "t2", "t3", "lam", "y"]


@st.composite
def polys(draw, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    p = Poly.const(0)
    for _ in range(n):
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
        mono = Poly.const(c)
        for v in VARS:
            e = draw(st.integers(0, max_exp))
            if e:
                mono = mono * Poly.var(v) ** e
        p = p + mono
    return p


@pytest.fixture(scope="session")
def symbolic():
    return WeightFamily.symbolic()


@pytest.fixture(scope="session")
def perm():
    return WeightFamily("permutation")


@pytest.fixture(scope="session")
def inv():
    return WeightFamily("involution")


@pytest.fixture(scope="session")
def forest():
    return WeightFamily("forest")


# acceptance outcomes, echoed in the terminal summary so they survive output capture
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
