"""Truncated bivariate exponential generating functions.

An :class:`Egf2` of order N holds ``a[n][k]`` for ``n + k <= N`` and stands
for ``sum a[n][k] x^n y^k / (n! k!)``.  Coefficients are kept in this
factorial-normalized form so products are binomial convolutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .combinatorics import (
    WeightFamily,
    complete_bell_value,
    fibonacci,
    involution_count,
    tree_count,
)
from .ring import ONE, ZERO, Poly, Scalar, sum_poly
from .singleton import a_value


@dataclass(frozen=True)
class Egf2:
    order: int
    coeffs: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1 or any(
                len(row) != self.order + 1 - n for n, row in enumerate(self.coeffs)):
            raise ValueError("coefficient array does not match the order")

    @classmethod
    def from_function(cls, order: int, f: Callable[[int, int], "Poly | Scalar"]) -> "Egf2":
        return cls(order, tuple(tuple(Poly.coerce(f(n, k)) for k in range(order + 1 - n))
                                for n in range(order + 1)))

    @classmethod
    def constant(cls, order: int, c: "Poly | Scalar" = 1) -> "Egf2":
        c = Poly.coerce(c)
        return cls.from_function(order, lambda n, k: c if n == k == 0 else ZERO)

    @classmethod
    def exp_linear(cls, order: int, cx: "Poly | Scalar", cy: "Poly | Scalar" = 0) -> "Egf2":
        """exp(cx*x + cy*y): coefficient cx^n cy^k."""
        cx, cy = Poly.coerce(cx), Poly.coerce(cy)
        return cls.from_function(order, lambda n, k: cx ** n * cy ** k)

    @classmethod
    def from_x_sequence(cls, seq: Sequence["Poly | Scalar"], order: int) -> "Egf2":
        """Univariate EGF in x: a[n][0] = seq[n]."""
        if len(seq) < order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(seq)}")
        return cls.from_function(order, lambda n, k: seq[n] if k == 0 else ZERO)

    def __getitem__(self, nk: Tuple[int, int]) -> Poly:
        n, k = nk
        if n < 0 or k < 0 or n + k > self.order:
            raise IndexError(f"({n}, {k}) is outside order {self.order}")
        return self.coeffs[n][k]

    def cells(self):
        for n, row in enumerate(self.coeffs):
            for k, v in enumerate(row):
                yield n, k, v

    def __add__(self, other: "Egf2") -> "Egf2":
        _same_order(self, other)
        return Egf2.from_function(self.order, lambda n, k: self[n, k] + other[n, k])

    def __sub__(self, other: "Egf2") -> "Egf2":
        _same_order(self, other)
        return Egf2.from_function(self.order, lambda n, k: self[n, k] - other[n, k])

    def scale(self, c: "Poly | Scalar") -> "Egf2":
        c = Poly.coerce(c)
        return Egf2.from_function(self.order, lambda n, k: c * self[n, k])

    def __mul__(self, other: "Egf2") -> "Egf2":
        return egf_mul(self, other)


def _same_order(a: Egf2, b: Egf2) -> None:
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")


def egf_mul(a: Egf2, b: Egf2) -> Egf2:
    _same_order(a, b)

    def cell(n: int, k: int) -> Poly:
        return sum_poly(math.comb(n, i) * math.comb(k, j) * a[i, j] * b[n - i, k - j]
                        for i in range(n + 1) for j in range(k + 1)
                        if a[i, j] and b[n - i, k - j])

    return Egf2.from_function(a.order, cell)


def egf_exp(g: Egf2) -> Egf2:
    """exp(g) for g with zero constant term.

    Row 0 comes from f_y = g_y f, every later row from f_x = g_x f.
    """
    if g[0, 0]:
        raise ValueError("egf_exp needs a zero constant term")
    N = g.order
    f: List[List[Poly]] = [[ZERO] * (N + 1 - n) for n in range(N + 1)]
    f[0][0] = ONE
    for k in range(N):
        f[0][k + 1] = sum_poly(math.comb(k, j) * g[0, j + 1] * f[0][k - j]
                               for j in range(k + 1) if g[0, j + 1])
    for n in range(N):
        for k in range(N - n):
            f[n + 1][k] = sum_poly(math.comb(n, i) * math.comb(k, j) * g[i + 1, j] * f[n - i][k - j]
                                   for i in range(n + 1) for j in range(k + 1)
                                   if g[i + 1, j])
    return Egf2(N, tuple(tuple(row) for row in f))


def diagonal_lift(c: Sequence["Poly | Scalar"], order: int) -> Egf2:
    """sum c_j (x+y)^j / j!  ->  b[n][k] = c[n+k]."""
    if len(c) < order + 1:
        raise ValueError(f"need {order + 1} coefficients, got {len(c)}")
    return Egf2.from_function(order, lambda n, k: c[n + k])


@dataclass
class EgfReport:
    which: str
    order: int
    passed: bool
    checked: int
    mismatch: Optional[dict] = None
    parts: List["EgfReport"] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"which": self.which, "order": self.order, "passed": self.passed,
               "checked": self.checked}
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out


def _compare(which: str, series: Egf2, expected: Callable[[int, int], "Poly | Scalar"]) -> EgfReport:
    checked = 0
    for n, k, got in series.cells():
        want = Poly.coerce(expected(n, k))
        checked += 1
        if got != want:
            return EgfReport(which, series.order, False, checked,
                             {"n": n, "k": k, "got": str(got), "want": str(want)})
    return EgfReport(which, series.order, True, checked)


def lemma21_series(order: int, w: WeightFamily) -> Egf2:
    """w(1) e^{-x w(1)} Y(w; x+y), truncated."""
    w1 = Poly.coerce(w.weight(1))
    bell = [complete_bell_value(j, w) for j in range(order + 1)]
    return egf_mul(Egf2.exp_linear(order, -w1), diagonal_lift(bell, order)).scale(w1)


def check_lemma21(order: int, w: WeightFamily) -> EgfReport:
    """Coefficient a[n][k] of the closed form against the recurrence value A_{n+k,k}."""
    series = lemma21_series(order, w)
    return _compare(f"lemma21/{w.label()}", series, lambda n, k: a_value(n + k, k, w))


def tree_exp_series(order: int) -> Egf2:
    return egf_exp(Egf2.from_x_sequence([0] + [j ** (j - 1) for j in range(1, order + 1)], order))


def check_tree_identity(order: int) -> EgfReport:
    series = tree_exp_series(order)
    return _compare("tree", series, lambda n, k: tree_count(n) if k == 0 else 0)


def involution_series(order: int) -> Egf2:
    # exp(y + (x+y)^2/2); the exponent's normalized coefficients are y, x^2, xy, y^2 -> 1
    g = Egf2.from_function(order, lambda n, k: 1 if (n, k) in ((0, 1), (2, 0), (1, 1), (0, 2)) else 0)
    return egf_exp(g)


def permutation_series(order: int) -> Egf2:
    return egf_mul(Egf2.exp_linear(order, -1),
                   diagonal_lift([math.factorial(j) for j in range(order + 1)], order))


def forest_series(order: int) -> Egf2:
    return egf_mul(Egf2.exp_linear(order, -1),
                   diagonal_lift([tree_count(j) for j in range(order + 1)], order))


def check_family_gfs(order: int) -> EgfReport:
    perm = WeightFamily("permutation")
    inv = WeightFamily("involution")
    forest = WeightFamily("forest")
    parts = [
        _compare("permutation", permutation_series(order), lambda n, k: a_value(n + k, k, perm)),
        _compare("involution", involution_series(order), lambda n, k: a_value(n + k, k, inv)),
        _compare("involution-y-marginal", involution_series(order),
                 lambda n, k: a_value(n + k, k, inv) if n else involution_count(k)),
        _compare("forest", forest_series(order), lambda n, k: a_value(n + k, k, forest)),
        check_tree_identity(order),
    ]
    return EgfReport("family-gfs", order, all(p.passed for p in parts),
                     sum(p.checked for p in parts), parts=parts)


def fibonacci_extraction(n: int) -> Tuple[int, int]:
    """Both sides of the x^n/n! coefficient of P(x, x^2), computed independently."""
    perm = WeightFamily("permutation")
    lhs = sum(math.comb(n, 2 * k) * math.comb(2 * k, k) * math.factorial(k) * a_value(n - k, k, perm)
              for k in range(n // 2 + 1))
    rhs = sum((-1) ** (n - k) * math.comb(n, k) * math.factorial(k) * fibonacci(k)
              for k in range(n + 1))
    return lhs, rhs


def check_fibonacci(order: int) -> EgfReport:
    for n in range(order + 1):
        lhs, rhs = fibonacci_extraction(n)
        if lhs != rhs:
            return EgfReport("fibonacci", order, False, n + 1, {"n": n, "lhs": lhs, "rhs": rhs})
    return EgfReport("fibonacci", order, True, order + 1)
