"""Weight families, Bell polynomials and the classical sequences built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .ring import DEFAULT_BUDGET, ONE, Y, ZERO, Poly, Scalar, poly_pow, sum_poly, t

Value = Union[int, Fraction, Poly]

KINDS = ("symbolic", "permutation", "involution", "forest", "custom")


@dataclass(frozen=True)
class WeightFamily:
    """Rule giving the weight of a block of size j.

    ``symbolic`` uses the variable t_j (up to ``budget``); the numeric kinds
    give (j-1)!, the involution pattern 1, 1, 0, ..., j^(j-1), or a finite
    user list.  With ``suppress_singletons`` the size-1 weight is forced to 0.
    """

    kind: str = "symbolic"
    custom: Tuple[Fraction, ...] | None = None
    budget: int = DEFAULT_BUDGET
    suppress_singletons: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight family {self.kind!r}")
        if (self.kind == "custom") != (self.custom is not None):
            raise ValueError("custom weights go with kind='custom' only")

    @classmethod
    def symbolic(cls, budget: int = DEFAULT_BUDGET) -> "WeightFamily":
        return cls("symbolic", budget=budget)

    @classmethod
    def named(cls, name: str, budget: int = DEFAULT_BUDGET) -> "WeightFamily":
        if name == "custom":
            raise ValueError("custom families need a weight list")
        return cls(name, budget=budget)

    @classmethod
    def from_list(cls, weights: Sequence[Scalar]) -> "WeightFamily":
        return cls("custom", custom=tuple(Fraction(w) for w in weights))

    @classmethod
    def ones(cls, length: int) -> "WeightFamily":
        return cls.from_list([1] * length)

    @property
    def is_numeric(self) -> bool:
        return self.kind != "symbolic"

    def without_singletons(self) -> "WeightFamily":
        return replace(self, suppress_singletons=True)

    def with_singletons(self) -> "WeightFamily":
        return replace(self, suppress_singletons=False)

    def weight(self, j: int) -> Value:
        if j < 1:
            raise ValueError(f"block size must be positive, got {j}")
        if j == 1 and self.suppress_singletons:
            return 0
        kind = self.kind
        if kind == "symbolic":
            return t(j, self.budget)
        if kind == "permutation":
            return math.factorial(j - 1)
        if kind == "involution":
            return 1 if j <= 2 else 0
        if kind == "forest":
            return j ** (j - 1)
        if j > len(self.custom):
            raise IndexError(f"custom weight list has no entry for block size {j}")
        w = self.custom[j - 1]
        return w.numerator if w.denominator == 1 else w

    def substitution(self, upto: int) -> Dict[str, Value]:
        """Bindings t_j -> weight(j) for j <= upto (numeric families only)."""
        if not self.is_numeric:
            raise ValueError("symbolic family has no numeric substitution")
        return {f"t{j}": self.weight(j) for j in range(1, upto + 1)}

    def label(self) -> str:
        name = self.kind
        if self.kind == "custom":
            name = "custom[" + ",".join(str(w) for w in self.custom) + "]"
        return name + ("/no-singletons" if self.suppress_singletons else "")


# per-process memo tables; values are never mutated once appended
_complete: Dict[WeightFamily, List[Value]] = {}
_partial: Dict[WeightFamily, List[List[Value]]] = {}


def _complete_values(n: int, w: WeightFamily) -> List[Value]:
    ys = _complete.setdefault(w, [1])
    while len(ys) <= n:
        m = len(ys) - 1
        # Y_{m+1} = sum_j C(m, j) w(j+1) Y_{m-j}
        acc: Value = 0
        for j in range(m + 1):
            wj = w.weight(j + 1)
            if not isinstance(wj, Poly) and wj == 0:
                continue
            acc = acc + math.comb(m, j) * wj * ys[m - j]
        ys.append(acc)
    return ys


def _partial_rows(n: int, w: WeightFamily) -> List[List[Value]]:
    rows = _partial.setdefault(w, [[1]])
    while len(rows) <= n:
        m = len(rows)
        row: List[Value] = [0] * (m + 1)
        for r in range(1, m + 1):
            acc: Value = 0
            for j in range(1, m - r + 2):
                prev = rows[m - j][r - 1] if r - 1 <= m - j else 0
                if isinstance(prev, int) and prev == 0:
                    continue
                wj = w.weight(j)
                if not isinstance(wj, Poly) and wj == 0:
                    continue
                acc = acc + math.comb(m - 1, j - 1) * wj * prev
            row[r] = acc
        rows.append(row)
    return rows


def complete_bell_value(n: int, w: WeightFamily) -> Value:
    """Raw ring value of the complete Bell polynomial (int for integer families)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _complete_values(n, w)[n]


def partial_bell(n: int, r: int, w: WeightFamily) -> Poly:
    """Weight of the partitions of [n] into exactly r blocks."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be nonnegative")
    if r > n:
        return ONE if n == r == 0 else ZERO
    return Poly.coerce(_partial_rows(n, w)[n][r])


def complete_bell(n: int, w: WeightFamily, suppress_singletons: bool = False) -> Poly:
    if suppress_singletons:
        w = w.without_singletons()
    return Poly.coerce(complete_bell_value(n, w))


def _integer_partitions(n: int, parts: int, largest: int | None = None) -> Iterator[List[int]]:
    if largest is None:
        largest = n
    if parts == 0:
        if n == 0:
            yield []
        return
    for first in range(min(n, largest), 0, -1):
        if first * parts < n:
            break
        for rest in _integer_partitions(n - first, parts - 1, first):
            yield [first] + rest


def partial_bell_by_types(n: int, r: int, w: WeightFamily) -> Poly:
    """The block-type summation formula; exponential, used only as a cross-check."""
    acc: Value = 0
    for parts in _integer_partitions(n, r):
        mult: Dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        count = math.factorial(n)
        term: Value = 1
        for j, rj in mult.items():
            count //= math.factorial(rj) * math.factorial(j) ** rj
            term = term * _pow(w.weight(j), rj)
        acc = acc + count * term
    return Poly.coerce(acc)


def _pow(v: Value, e: int) -> Value:
    return poly_pow(v, e) if isinstance(v, Poly) else v ** e


# integer sequences

_derangements: List[int] = [1, 0]


def derangement(n: int) -> int:
    while len(_derangements) <= n:
        k = len(_derangements) - 2
        _derangements.append((k + 1) * (_derangements[k] + _derangements[k + 1]))
    return _derangements[n]


def double_factorial_odd(k: int) -> int:
    """(2k-1)!!, with the k = 0 value taken as 1."""
    return math.prod(range(1, 2 * k, 2))


def involution_count(n: int) -> int:
    return sum(math.comb(n, 2 * k) * double_factorial_odd(k) for k in range(n // 2 + 1))


def fpf_involution(n: int) -> int:
    return double_factorial_odd(n // 2) if n % 2 == 0 else 0


def bell_number(n: int) -> int:
    return complete_bell_value(n, WeightFamily.ones(max(n, 64)))


_fib: List[int] = [1, 1]


def fibonacci(n: int) -> int:
    """Coefficients of 1/(1 - x - x^2): F0 = F1 = 1, F2 = 2, ..."""
    while len(_fib) <= n:
        _fib.append(_fib[-1] + _fib[-2])
    return _fib[n]


def tree_count(n: int) -> int:
    """(n+1)^(n-1): rooted labeled forests on [n]; 1 at n = 0."""
    return 1 if n == 0 else (n + 1) ** (n - 1)


SEQUENCES = {
    "derangement": derangement,
    "involution_count": involution_count,
    "fpf_involution": fpf_involution,
    "bell_number": bell_number,
    "fibonacci": fibonacci,
    "tree_count": tree_count,
}


def sequence(name: str, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    try:
        fn = SEQUENCES[name]
    except KeyError:
        raise ValueError(f"unknown sequence {name!r}") from None
    return fn(n)


def bessel_number(n: int, j: int) -> int:
    """Partitions of [n] into j blocks of size at most 2; 0 outside (n+1)//2 <= j <= n."""
    if j < 0 or n < 0 or 2 * j < n or j > n:
        return 0
    return math.factorial(n) // (2 ** (n - j) * math.factorial(n - j) * math.factorial(2 * j - n))


_bell_polys: List[Poly] = [ONE]


def bell_polynomial(k: int) -> Poly:
    """B_k(y) = Y_k(y, y, ...), via B_{n+1}(y) = y * sum_k C(n,k) B_k(y)."""
    while len(_bell_polys) <= k:
        n = len(_bell_polys) - 1
        _bell_polys.append(Y * sum_poly(math.comb(n, i) * _bell_polys[i] for i in range(n + 1)))
    return _bell_polys[k]


def rising_factorial(u: Poly | Scalar, k: int) -> Poly:
    out = ONE
    u = Poly.coerce(u)
    for i in range(k):
        out = out * (u + i)
    return out


def charlier(n: int, u: Poly | Scalar, v: Poly | Scalar) -> Poly:
    """Re-normalized Charlier polynomial sum_k C(n,k) (u)_k v^(n-k)."""
    v = Poly.coerce(v)
    return sum_poly(math.comb(n, k) * rising_factorial(u, k) * poly_pow(v, n - k)
                    for k in range(n + 1))
