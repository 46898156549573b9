"""The largest-singleton triangle A_{n,k}(t) and its permutation, involution
and forest specializations.

``A_{n,k}`` is the total weight of partitions of [n+1] whose largest
singleton block is {k+1}.  The production path is the column-0-first
recurrence ``A[n][k] = A[n][k-1] + w(1) * A[n-1][k-1]``; the alternating-sum
and umbral forms exist to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .combinatorics import (
    Value,
    WeightFamily,
    bessel_number,
    complete_bell_value,
    derangement,
    fpf_involution,
    involution_count,
    tree_count,
)
from .ring import Poly, sum_poly
from .umbral import UmbralExpr, umbra_from_family, umbral_eval

NUMERIC_NMAX = 60

# Values printed in the source tables, rows n = 0.., columns k = 0..n.
PUBLISHED_TABLES: Dict[str, List[List[int]]] = {
    "permutation": [
        [1],
        [0, 1],
        [1, 1, 2],
        [2, 3, 4, 6],
        [9, 11, 14, 18, 24],
        [44, 53, 64, 78, 96, 120],
        [265, 309, 362, 426, 504, 600, 720],
    ],
    "involution": [
        [1],
        [0, 1],
        [1, 1, 2],
        [0, 1, 2, 4],
        [3, 3, 4, 6, 10],
        [0, 3, 6, 10, 16, 26],
        [15, 15, 18, 24, 34, 50, 76],
        [0, 15, 30, 48, 72, 106, 156, 232],
        [105, 105, 120, 150, 198, 270, 376, 532, 764],
    ],
    "forest": [
        [1],
        [0, 1],
        [2, 2, 3],
        [9, 11, 13, 16],
        [76, 85, 96, 109, 125],
        [805, 881, 966, 1062, 1171, 1296],
        [10626, 11431, 12312, 13278, 14340, 15511, 16807],
    ],
}


class DomainError(ValueError):
    """Index pair outside 0 <= k <= n."""


_rows: Dict[WeightFamily, List[List[Value]]] = {}


def _integer_family(w: WeightFamily) -> bool:
    return w.kind in ("permutation", "involution", "forest")


def triangle_values(w: WeightFamily, n_max: int) -> List[List[Value]]:
    """Raw rows 0..n_max (ints for the integer families, Polys when symbolic)."""
    rows = _rows.setdefault(w, [])
    w1 = w.weight(1)
    nosingle = w.without_singletons()
    while len(rows) <= n_max:
        n = len(rows)
        row = [w1 * complete_bell_value(n, nosingle)]
        for k in range(1, n + 1):
            row.append(row[k - 1] + w1 * rows[n - 1][k - 1])
        if _integer_family(w):
            assert all(isinstance(v, int) for v in row), "integer family produced a fraction"
        rows.append(row)
    return rows


def _check_indices(n: int, k: int) -> None:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")


def a_value(n: int, k: int, w: WeightFamily) -> Value:
    _check_indices(n, k)
    return triangle_values(w, n)[n][k]


def a_recurrence(n: int, k: int, w: WeightFamily) -> Poly:
    return Poly.coerce(a_value(n, k, w))


def a_explicit(n: int, m: int, w: WeightFamily) -> Poly:
    """A_{n+m,m} as the inclusion-exclusion sum over Y_{m+k}."""
    if n < 0 or m < 0:
        raise DomainError("offsets must be nonnegative")
    w1 = w.weight(1)
    return sum_poly((-1) ** (n - k) * math.comb(n, k) * w1 ** (n - k + 1)
                    * complete_bell_value(m + k, w) for k in range(n + 1))


def a_umbral_expr(n: int, k: int, w: WeightFamily) -> UmbralExpr:
    u = UmbralExpr.symbol()
    w1 = w.weight(1)
    return w1 * u ** k * (u - w1) ** n


def a_umbral(n: int, k: int, w: WeightFamily) -> Poly:
    """A_{n+k,k} = w(1) U^k (U - w(1))^n evaluated against the family umbra."""
    if n < 0 or k < 0:
        raise DomainError("offsets must be nonnegative")
    return umbral_eval(a_umbral_expr(n, k, w), umbra_from_family(w, n + k))


# specializations with closed forms

P_ROUTES = ("alternating", "derangement")
Q_ROUTES = ("involution_sum", "fpf_sum", "product_sum", "bessel_sum")


def p_explicit(n: int, k: int, route: str = "alternating") -> int:
    """P_{n+k,k}: permutations of [n+k+1] whose largest fixed point is k+1."""
    if route == "alternating":
        return sum((-1) ** (n - j) * math.comb(n, j) * math.factorial(k + j) for j in range(n + 1))
    if route == "derangement":
        return sum(math.comb(k, j) * derangement(n + j) for j in range(k + 1))
    raise ValueError(f"unknown route {route!r}")


def q_formulas(n: int, k: int, route: str = "involution_sum") -> int:
    """Q_{n+k,k} by one of four closed forms."""
    if route == "involution_sum":
        return sum((-1) ** (n - j) * math.comb(n, j) * involution_count(k + j) for j in range(n + 1))
    if route == "fpf_sum":
        return sum(math.comb(k, j) * fpf_involution(n + j) for j in range(k + 1))
    if route == "product_sum":
        return sum(math.comb(k, j) * math.comb(n, j) * math.factorial(j)
                   * involution_count(k - j) * fpf_involution(n - j)
                   for j in range(min(n, k) + 1))
    if route == "bessel_sum":
        total = 0
        for j in range((n + 1) // 2, (n + k + 1) // 2 + 1):
            rest = n + k - 2 * j
            if rest < 0:
                continue  # factorial of a negative argument: term taken as 0
            total += (math.factorial(k) // math.factorial(rest)
                      * involution_count(rest) * bessel_number(n, j))
        return total
    raise ValueError(f"unknown route {route!r}")


def l_explicit(n: int, k: int) -> int:
    """L_{n+k,k}: forests on [n+k+1] whose largest singleton tree is k+1."""
    return sum((-1) ** (n - j) * math.comb(n, j) * tree_count(k + j) for j in range(n + 1))


@dataclass(frozen=True)
class Triangle:
    family: WeightFamily
    rows: Tuple[Tuple[Poly, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nk: Tuple[int, int]) -> Poly:
        n, k = nk
        _check_indices(n, k)
        return self.rows[n][k]

    def entries(self):
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                yield n, k, v

    def mismatches(self, reference: List[List[int]]) -> List[Tuple[int, int, Poly, int]]:
        """Cells where this triangle disagrees with ``reference`` on their overlap."""
        bad = []
        for n, row in enumerate(reference[: len(self.rows)]):
            for k, want in enumerate(row):
                if self.rows[n][k] != want:
                    bad.append((n, k, self.rows[n][k], want))
        return bad


def build_triangle(family: WeightFamily, n_max: int) -> Triangle:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if family.is_numeric and n_max > NUMERIC_NMAX:
        raise ValueError(f"numeric triangles are limited to n_max <= {NUMERIC_NMAX}")
    rows = triangle_values(family, n_max)[: n_max + 1]
    return Triangle(family, tuple(tuple(Poly.coerce(v) for v in row) for row in rows))
