"""Registry of the largest-singleton identities and an exact checker.

Each record builds its two sides through different public entry points: the
left side reads the recurrence triangle, the right side uses closed forms,
the umbral route or plain sequences.  ``symbolic_poly`` records compare
canonical polynomials in t, lam and y; ``rational_points`` records compare
exact values at a finite list of points.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    WeightFamily,
    bell_number,
    bell_polynomial,
    charlier,
    complete_bell,
    derangement,
    double_factorial_odd,
    fpf_involution,
    involution_count,
    tree_count,
)
from .egf import fibonacci_extraction
from .ring import LAM, MAX_BUDGET, Y, Poly, poly_binomial, sum_poly, t
from .singleton import a_recurrence, a_umbral, a_value, l_explicit, p_explicit, q_formulas

SYMBOLIC_DEFAULT_MAX = 6
NUMERIC_DEFAULT_MAX = 10
SYMBOLIC_LIMIT = 10
NUMERIC_LIMIT = 30


class UnknownIdentityError(KeyError):
    pass


class BindingError(ValueError):
    pass


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    params: Tuple[str, ...]
    lhs: Callable[..., object]
    rhs: Callable[..., object]
    reference: str
    family: str
    mode: str = "symbolic_poly"
    points: Optional[Callable[..., Sequence[Fraction]]] = None
    sanity: Optional[Callable[..., None]] = None
    default_max: int = SYMBOLIC_DEFAULT_MAX
    limit: int = SYMBOLIC_LIMIT


@dataclass
class CheckReport:
    id: str
    params: Dict[str, int]
    status: str
    witness: Optional[dict] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        return (self.id, tuple(sorted(self.params.items())))

    def to_dict(self, timing: bool = False) -> dict:
        out = {"id": self.id, "params": dict(sorted(self.params.items())), "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# shared building blocks

_T = WeightFamily.symbolic(budget=MAX_BUDGET)
_PERM = WeightFamily("permutation")
_INV = WeightFamily("involution")
_FOREST = WeightFamily("forest")
_t1 = t(1, MAX_BUDGET)
C = math.comb
fact = math.factorial


def _A(n: int, k: int) -> Poly:
    return a_recurrence(n, k, _T)


def _A_umbral(n: int, k: int) -> Poly:
    return a_umbral(n - k, k, _T)


def _Yc(n: int) -> Poly:
    return complete_bell(n, _T)


def _P(n: int, k: int) -> int:
    return a_value(n, k, _PERM)


def _Q(n: int, k: int) -> int:
    return a_value(n, k, _INV)


def _L(n: int, k: int) -> int:
    return a_value(n, k, _FOREST)


def _S(terms) -> Poly:
    return sum_poly(terms)


def _lam_degree_at_most_n(lhs: Poly, rhs: Poly, n: int, **_) -> None:
    for side, p in (("lhs", lhs), ("rhs", rhs)):
        if p.degree_in("lam") > n:
            raise AssertionError(f"{side} has lam-degree {p.degree_in('lam')} > {n}")


_REGISTRY: Dict[str, IdentityRecord] = {}


def _add(rec: IdentityRecord, registry: Dict[str, IdentityRecord]) -> None:
    if rec.id in registry:
        raise ValueError(f"duplicate identity id {rec.id!r}")
    registry[rec.id] = rec


def _general(registry):
    def add(id, params, ref, lhs, rhs, **kw):
        _add(IdentityRecord(id, tuple(params), lhs, rhs, ref, "symbolic", **kw), registry)

    add("2.2A", "nm", "sum_k C(k+lam-1,k) A[n+m,m+k] = sum_k C(n+lam,k) C(n+lam-k-1,n-k) A[m+k,m] t1^(n-k)",
        lambda n, m: _S(poly_binomial(LAM + k - 1, k) * _A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _S(poly_binomial(LAM + n, k) * poly_binomial(LAM + n - k - 1, n - k)
                        * _A_umbral(m + k, m) * _t1 ** (n - k) for k in range(n + 1)),
        sanity=_lam_degree_at_most_n)
    add("2.2B", "nm", "sum_k C(k+lam-1,k) A[n+m,m+k] = sum_k (-1)^(n-k) C(n+lam,k) Y[m+k] t1^(n-k+1)",
        lambda n, m: _S(poly_binomial(LAM + k - 1, k) * _A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _S((-1) ** (n - k) * poly_binomial(LAM + n, k) * _Yc(m + k) * _t1 ** (n - k + 1)
                        for k in range(n + 1)),
        sanity=_lam_degree_at_most_n)
    add("2.3A", "nm", "A[n+m,m] = sum_k (-1)^(n-k) C(n,k) t1^(n-k+1) Y[m+k]",
        lambda n, m: _A(n + m, m),
        lambda n, m: _S((-1) ** (n - k) * C(n, k) * _t1 ** (n - k + 1) * _Yc(m + k) for k in range(n + 1)))
    # the next three are stated with a division by t1 or t1^2; both sides are multiplied through
    add("2.3B", "nm", "t1 * sum_k A[n+m,m+k] = t1 Y[n+m+1] - A[n+m+1,m]",
        lambda n, m: _t1 * _S(_A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _t1 * _Yc(n + m + 1) - _A_umbral(n + m + 1, m))
    add("2.3C", "nm", "t1^2 * sum_k (k+1) A[n+m,m+k] = A[n+m+2,m] - t1 Y[n+m+2] + (n+2) t1^2 Y[n+m+1]",
        lambda n, m: _t1 ** 2 * _S((k + 1) * _A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _A_umbral(n + m + 2, m) - _t1 * _Yc(n + m + 2) + (n + 2) * _t1 ** 2 * _Yc(n + m + 1))
    add("2.3D", "nm", "t1^2 * sum_k (n-k+1) A[n+m,m+k] = t1 Y[n+m+2] - A[n+m+2,m] - (n+2) t1 A[n+m+1,m]",
        lambda n, m: _t1 ** 2 * _S((n - k + 1) * _A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _t1 * _Yc(n + m + 2) - _A_umbral(n + m + 2, m) - (n + 2) * _t1 * _A_umbral(n + m + 1, m))
    add("2.4", "nmk", "A[n+m+k,m+k] = sum_j C(m,j) t1^(m-j) A[n+k+j,k]",
        lambda n, m, k: _A(n + m + k, m + k),
        lambda n, m, k: _S(C(m, j) * _t1 ** (m - j) * _A_umbral(n + k + j, k) for j in range(m + 1)))
    add("2.5", "nm", "sum_k C(n,k) A[n+m,m+k] y^k = sum_k (-1)^(n-k) C(n,k) Y[m+k] (y+1)^k t1^(n-k+1)",
        lambda n, m: _S(C(n, k) * _A(n + m, m + k) * Y ** k for k in range(n + 1)),
        lambda n, m: _S((-1) ** (n - k) * C(n, k) * _Yc(m + k) * (Y + 1) ** k * _t1 ** (n - k + 1)
                        for k in range(n + 1)))
    add("2.6", "nm", "sum_k C(n,k) A[m+k,m] y^(n-k) = t1 sum_k C(n,k) Y[m+k] (y-t1)^(n-k)",
        lambda n, m: _S(C(n, k) * _A(m + k, m) * Y ** (n - k) for k in range(n + 1)),
        lambda n, m: _t1 * _S(C(n, k) * _Yc(m + k) * (Y - _t1) ** (n - k) for k in range(n + 1)))
    add("2.7a", "nm", "sum_k (-1)^(n-k) C(n,k) A[n+m,m+k] = Y[m] t1^(n+1)",
        lambda n, m: _S((-1) ** (n - k) * C(n, k) * _A(n + m, m + k) for k in range(n + 1)),
        lambda n, m: _Yc(m) * _t1 ** (n + 1))
    # stated with t1^(n-k-1); multiplied through by t1 to stay polynomial
    add("2.7b", "nm", "sum_k C(n,k) A[m+k,m] t1^(n-k) = t1 Y[m+n]",
        lambda n, m: _S(C(n, k) * _A(m + k, m) * _t1 ** (n - k) for k in range(n + 1)),
        lambda n, m: _t1 * _Yc(m + n))
    add("2.7", "nm", "sum_k C(n,k) A[m+k,m] (y+1)^k (y t1)^(n-k) = sum_k C(n,k) A[n+m,m+k] y^k",
        lambda n, m: _S(C(n, k) * _A(m + k, m) * (Y + 1) ** k * (Y * _t1) ** (n - k) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * _A_umbral(n + m, m + k) * Y ** k for k in range(n + 1)))


def _charlier_points(n: int, m: int) -> List[Fraction]:
    return [Fraction(v) for v in range(n + 3)]


def _permutation(registry):
    def add(id, params, ref, lhs, rhs, **kw):
        kw.setdefault("default_max", NUMERIC_DEFAULT_MAX)
        kw.setdefault("limit", NUMERIC_LIMIT)
        _add(IdentityRecord(id, tuple(params), lhs, rhs, ref, "permutation", **kw), registry)

    add("3.1", "nm", "sum_k C(n,k) P[n+m,m+k] y^k = sum_k (-1)^(n-k) C(n,k) (m+k)! (y+1)^k",
        lambda n, m: _S(C(n, k) * _P(n + m, m + k) * Y ** k for k in range(n + 1)),
        lambda n, m: _S((-1) ** (n - k) * C(n, k) * fact(m + k) * (Y + 1) ** k for k in range(n + 1)))
    add("3.2", "nm", "sum_k C(n,k) P[m+k,m] y^(n-k) = sum_k C(n,k) (m+k)! (y-1)^(n-k)",
        lambda n, m: _S(C(n, k) * _P(m + k, m) * Y ** (n - k) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * fact(m + k) * (Y - 1) ** (n - k) for k in range(n + 1)))
    add("3.charlier1", "nm",
        "sum_k (-1)^(n-k) C(n,k) (m+k)! (y+1)^k = m! (y+1)^n C_n(m+1, -1/(y+1)) at y = 0..n+2",
        lambda y, n, m: sum((-1) ** (n - k) * C(n, k) * fact(m + k) * (y + 1) ** k for k in range(n + 1)),
        lambda y, n, m: fact(m) * (y + 1) ** n * charlier(n, m + 1, -1 / (y + 1)).constant_value(),
        mode="rational_points", points=_charlier_points)
    add("3.charlier2", "nm", "sum_k C(n,k) P[m+k,m] y^(n-k) = m! C_n(m+1, y-1)",
        lambda n, m: _S(C(n, k) * _P(m + k, m) * Y ** (n - k) for k in range(n + 1)),
        lambda n, m: fact(m) * charlier(n, m + 1, Y - 1))
    add("3.D1", "nm", "sum_k C(n,k) P[n+m,m+k] D[k] = sum_k (-1)^(n-k) C(n,k) (m+k)! k!",
        lambda n, m: sum(C(n, k) * _P(n + m, m + k) * derangement(k) for k in range(n + 1)),
        lambda n, m: sum((-1) ** (n - k) * C(n, k) * fact(m + k) * fact(k) for k in range(n + 1)))
    add("3.D2", "nm", "sum_k C(n,k) P[m+k,m] (n-k)! = sum_k C(n,k) (m+k)! D[n-k]",
        lambda n, m: sum(C(n, k) * _P(m + k, m) * fact(n - k) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * fact(m + k) * derangement(n - k) for k in range(n + 1)))
    add("3.B1", "nm", "sum_k C(n,k) P[n+m,m+k] B[k] = sum_k (-1)^(n-k) C(n,k) (m+k)! B[k+1]",
        lambda n, m: sum(C(n, k) * _P(n + m, m + k) * bell_number(k) for k in range(n + 1)),
        lambda n, m: sum((-1) ** (n - k) * C(n, k) * fact(m + k) * bell_number(k + 1) for k in range(n + 1)))
    add("3.B2", "nm", "sum_k C(n,k) P[m+k,m] B[n-k+1] = sum_k C(n,k) (m+k)! B[n-k]",
        lambda n, m: sum(C(n, k) * _P(m + k, m) * bell_number(n - k + 1) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * fact(m + k) * bell_number(n - k) for k in range(n + 1)))
    add("3.riordan", "n", "sum_k C(n,k) (k+1)! (n+1)^(n-k) = (n+1)^(n+1)",
        lambda n: sum(C(n, k) * fact(k + 1) * (n + 1) ** (n - k) for k in range(n + 1)),
        lambda n: (n + 1) ** (n + 1))
    add("3.3pre", "n", "sum_k (-1)^(n-k) C(n,k) P[n+1,k+1] (n+2)^k (n+1)^(n-k) = (n+1)^(n+1)",
        lambda n: sum((-1) ** (n - k) * C(n, k) * _P(n + 1, k + 1) * (n + 2) ** k * (n + 1) ** (n - k)
                      for k in range(n + 1)),
        lambda n: (n + 1) ** (n + 1))
    add("3.3", "n", "sum_k C(n,k) (D[k] + D[k+1]) (n+2)^(n-k) = (n+1)^(n+1)",
        lambda n: sum(C(n, k) * (derangement(k) + derangement(k + 1)) * (n + 2) ** (n - k)
                      for k in range(n + 1)),
        lambda n: (n + 1) ** (n + 1))
    add("3.4", "n", "sum_k C(n,k) D[k+1] (n+1)^(n-k) = n^(n+1)",
        lambda n: sum(C(n, k) * derangement(k + 1) * (n + 1) ** (n - k) for k in range(n + 1)),
        lambda n: n ** (n + 1))
    add("3.fib", "n", "sum_k C(n,2k) C(2k,k) k! P[n-k,k] = sum_k (-1)^(n-k) C(n,k) k! F[k]",
        lambda n: fibonacci_extraction(n)[0],
        lambda n: fibonacci_extraction(n)[1],
        limit=20)
    add("3.DE", "n", "sum_k (k+1) P[n,k] = D[n+2]",
        lambda n: sum((k + 1) * _P(n, k) for k in range(n + 1)),
        lambda n: derangement(n + 2))


def _involution(registry):
    I, M = involution_count, fpf_involution

    def add(id, params, ref, lhs, rhs, **kw):
        kw.setdefault("default_max", NUMERIC_DEFAULT_MAX)
        kw.setdefault("limit", NUMERIC_LIMIT)
        _add(IdentityRecord(id, tuple(params), lhs, rhs, ref, "involution", **kw), registry)

    add("4.2.1", "nk", "Q[n+k,k] = sum_j (-1)^(n-j) C(n,j) I[k+j]",
        lambda n, k: _Q(n + k, k),
        lambda n, k: sum((-1) ** (n - j) * C(n, j) * I(k + j) for j in range(n + 1)))
    add("4.2.2", "nk", "Q[n+k,k] = sum_j C(k,j) M[n+j]",
        lambda n, k: _Q(n + k, k),
        lambda n, k: sum(C(k, j) * M(n + j) for j in range(k + 1)))
    add("4.2.3", "nmk", "Q[n+m+k,m+k] = sum_j C(m,j) Q[n+k+j,k]",
        lambda n, m, k: _Q(n + m + k, m + k),
        lambda n, m, k: sum(C(m, j) * q_formulas(n + j, k, "fpf_sum") for j in range(m + 1)))
    add("4.2.4", "nk", "Q[n+k,k] = sum_j C(k,j) C(n,j) j! I[k-j] M[n-j]",
        lambda n, k: _Q(n + k, k),
        lambda n, k: sum(C(k, j) * C(n, j) * fact(j) * I(k - j) * M(n - j) for j in range(min(n, k) + 1)))
    add("4.2.5", "nk", "Q[n+k,k] = sum_j k!/(n+k-2j)! I[n+k-2j] Bessel(n,j)",
        lambda n, k: _Q(n + k, k),
        lambda n, k: q_formulas(n, k, "bessel_sum"))
    add("4.3", "n", "sum_k (-1)^(n-k) C(n,k) Q[n,k] (y+1)^k = sum_k C(n,k) y^k I[k]",
        lambda n: _S((-1) ** (n - k) * C(n, k) * _Q(n, k) * (Y + 1) ** k for k in range(n + 1)),
        lambda n: _S(C(n, k) * Y ** k * I(k) for k in range(n + 1)))
    add("4.4", "n", "sum_k C(n,k) Q[n,k] y^k = sum_k (-1)^(n-k) C(n,k) (y+1)^k I[k]",
        lambda n: _S(C(n, k) * _Q(n, k) * Y ** k for k in range(n + 1)),
        lambda n: _S((-1) ** (n - k) * C(n, k) * (Y + 1) ** k * I(k) for k in range(n + 1)))
    add("4.5", "n", "sum_k C(n,k) Q[n,k] y^k = sum_k C(n,2k) (2k-1)!! y^(n-2k) (y+1)^(2k)",
        lambda n: _S(C(n, k) * _Q(n, k) * Y ** k for k in range(n + 1)),
        lambda n: _S(C(n, 2 * k) * double_factorial_odd(k) * Y ** (n - 2 * k) * (Y + 1) ** (2 * k)
                     for k in range(n // 2 + 1)))
    add("4.7", "nm", "sum_k C(n,k) Q[m+k,m] (y+1)^(n-k) = sum_k C(n,k) I[m+k] y^(n-k)",
        lambda n, m: _S(C(n, k) * _Q(m + k, m) * (Y + 1) ** (n - k) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * I(m + k) * Y ** (n - k) for k in range(n + 1)))
    add("4.8", "nm", "sum_k C(n,k) Q[m+k,m] B_{n-k+1}(y) = y sum_k C(n,k) I[m+k] B_{n-k}(y)",
        lambda n, m: _S(C(n, k) * _Q(m + k, m) * bell_polynomial(n - k + 1) for k in range(n + 1)),
        lambda n, m: Y * _S(C(n, k) * I(m + k) * bell_polynomial(n - k) for k in range(n + 1)))
    add("4.9", "nm", "sum_k C(n,k) C(y+n-k,n-k) Q[m+k,m] = sum_k C(n,k) C(y,n-k) I[m+k]",
        lambda n, m: _S(C(n, k) * poly_binomial(Y + n - k, n - k) * _Q(m + k, m) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * poly_binomial(Y, n - k) * I(m + k) for k in range(n + 1)))
    add("4.10", "nm", "sum_k C(n,k) Q[m+k,m] (n-k)! = sum_k C(n,k) I[m+k] D[n-k]",
        lambda n, m: sum(C(n, k) * _Q(m + k, m) * fact(n - k) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * I(m + k) * derangement(n - k) for k in range(n + 1)))
    add("4.11", "nm", "sum_k C(n,k) Q[m+k,m] I[n-k] = sum_k C(n,k) I[m+k] M[n-k]",
        lambda n, m: sum(C(n, k) * _Q(m + k, m) * I(n - k) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * I(m + k) * M(n - k) for k in range(n + 1)))
    add("4.12", "nm", "sum_k C(n,k) Q[m+k,m] B[n-k+1] = sum_k C(n,k) I[m+k] B[n-k]",
        lambda n, m: sum(C(n, k) * _Q(m + k, m) * bell_number(n - k + 1) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * I(m + k) * bell_number(n - k) for k in range(n + 1)))
    add("4.T5a", "n", "sum_k (k+1) Q[n,k] = M[n+2] - I[n+2] + (n+2) I[n+1]",
        lambda n: sum((k + 1) * _Q(n, k) for k in range(n + 1)),
        lambda n: M(n + 2) - I(n + 2) + (n + 2) * I(n + 1))
    add("4.T5b", "n", "sum_k (n-k+1) Q[n,k] = I[n+2] - (n+2) M[n+1] - M[n+2]",
        lambda n: sum((n - k + 1) * _Q(n, k) for k in range(n + 1)),
        lambda n: I(n + 2) - (n + 2) * M(n + 1) - M(n + 2))


def _forest(registry):
    T = tree_count

    def add(id, params, ref, lhs, rhs, **kw):
        kw.setdefault("default_max", NUMERIC_DEFAULT_MAX)
        kw.setdefault("limit", NUMERIC_LIMIT)
        _add(IdentityRecord(id, tuple(params), lhs, rhs, ref, "forest", **kw), registry)

    add("5.2.1", "nk", "L[n+k,k] = sum_j (-1)^(n-j) C(n,j) (k+j+1)^(k+j-1)",
        lambda n, k: _L(n + k, k),
        lambda n, k: sum((-1) ** (n - j) * C(n, j) * T(k + j) for j in range(n + 1)))
    add("5.2.3", "nmk", "L[n+m+k,m+k] = sum_j C(m,j) L[n+k+j,k]",
        lambda n, m, k: _L(n + m + k, m + k),
        lambda n, m, k: sum(C(m, j) * l_explicit(n + j, k) for j in range(m + 1)))
    add("5.2.lam", "nm", "sum_j C(j+lam-1,j) L[n+m,m+j] = sum_j (-1)^(n-j) C(n+lam,j) (m+j+1)^(m+j-1)",
        lambda n, m: _S(poly_binomial(LAM + j - 1, j) * _L(n + m, m + j) for j in range(n + 1)),
        lambda n, m: _S((-1) ** (n - j) * poly_binomial(LAM + n, j) * T(m + j) for j in range(n + 1)),
        sanity=_lam_degree_at_most_n)
    add("5.T3a", "n", "sum_k (-1)^(n-k) C(n,k) L[n,k] (y+1)^k = sum_k C(n,k) (k+1)^(k-1) y^k",
        lambda n: _S((-1) ** (n - k) * C(n, k) * _L(n, k) * (Y + 1) ** k for k in range(n + 1)),
        lambda n: _S(C(n, k) * T(k) * Y ** k for k in range(n + 1)))
    add("5.T3b", "n", "sum_k C(n,k) L[n,k] y^k = sum_k (-1)^(n-k) C(n,k) (k+1)^(k-1) (y+1)^k",
        lambda n: _S(C(n, k) * _L(n, k) * Y ** k for k in range(n + 1)),
        lambda n: _S((-1) ** (n - k) * C(n, k) * T(k) * (Y + 1) ** k for k in range(n + 1)))
    add("5.T4a", "nm", "sum_k C(n,k) L[m+k,m] (y+1)^(n-k) = sum_k C(n,k) (m+k+1)^(m+k-1) y^(n-k)",
        lambda n, m: _S(C(n, k) * _L(m + k, m) * (Y + 1) ** (n - k) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * T(m + k) * Y ** (n - k) for k in range(n + 1)))
    add("5.T4b", "nm", "sum_k C(n,k) L[m+k,m] B_{n-k+1}(y) = y sum_k C(n,k) (m+k+1)^(m+k-1) B_{n-k}(y)",
        lambda n, m: _S(C(n, k) * _L(m + k, m) * bell_polynomial(n - k + 1) for k in range(n + 1)),
        lambda n, m: Y * _S(C(n, k) * T(m + k) * bell_polynomial(n - k) for k in range(n + 1)))
    add("5.T4c", "nm", "sum_k C(n,k) C(y+n-k,n-k) L[m+k,m] = sum_k C(n,k) C(y,n-k) (m+k+1)^(m+k-1)",
        lambda n, m: _S(C(n, k) * poly_binomial(Y + n - k, n - k) * _L(m + k, m) for k in range(n + 1)),
        lambda n, m: _S(C(n, k) * poly_binomial(Y, n - k) * T(m + k) for k in range(n + 1)))
    add("5.C5a", "nm", "sum_k C(n,k) L[m+k,m] (n-k)! = sum_k C(n,k) (m+k+1)^(m+k-1) D[n-k]",
        lambda n, m: sum(C(n, k) * _L(m + k, m) * fact(n - k) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * T(m + k) * derangement(n - k) for k in range(n + 1)))
    add("5.C5b", "nm", "sum_k C(n,k) L[m+k,m] B[n-k+1] = sum_k C(n,k) (m+k+1)^(m+k-1) B[n-k]",
        lambda n, m: sum(C(n, k) * _L(m + k, m) * bell_number(n - k + 1) for k in range(n + 1)),
        lambda n, m: sum(C(n, k) * T(m + k) * bell_number(n - k) for k in range(n + 1)))


def register_all() -> Dict[str, IdentityRecord]:
    registry: Dict[str, IdentityRecord] = {}
    for group in (_general, _permutation, _involution, _forest):
        group(registry)
    return registry


def registry() -> Dict[str, IdentityRecord]:
    if not _REGISTRY:
        _REGISTRY.update(register_all())
    return _REGISTRY


def lookup(id: str) -> IdentityRecord:
    try:
        return registry()[id]
    except KeyError:
        raise UnknownIdentityError(id) from None


def _validate(rec: IdentityRecord, bindings: Mapping[str, int]) -> Dict[str, int]:
    missing = [p for p in rec.params if p not in bindings]
    extra = [p for p in bindings if p not in rec.params]
    if missing or extra:
        raise BindingError(f"{rec.id} takes parameters {','.join(rec.params)}; "
                           f"missing {missing}, unexpected {extra}")
    out = {}
    for p in rec.params:
        v = bindings[p]
        if not isinstance(v, int) or not 0 <= v <= rec.limit:
            raise BindingError(f"{rec.id}: {p}={v!r} outside 0..{rec.limit}")
        out[p] = v
    return out


def check_record(rec: IdentityRecord, bindings: Mapping[str, int]) -> CheckReport:
    b = _validate(rec, bindings)
    start = time.perf_counter()
    witness = None
    try:
        if rec.mode == "rational_points":
            for y in rec.points(**b):
                lhs, rhs = Fraction(rec.lhs(y, **b)), Fraction(rec.rhs(y, **b))
                if lhs != rhs:
                    witness = {"point": {"y": str(y)}, "lhs": str(lhs), "rhs": str(rhs)}
                    break
        else:
            lhs, rhs = Poly.coerce(rec.lhs(**b)), Poly.coerce(rec.rhs(**b))
            if rec.sanity is not None:
                rec.sanity(lhs, rhs, **b)
            if lhs != rhs:
                witness = {"lhs": str(lhs), "rhs": str(rhs)}
    except Exception as exc:  # a broken side is a failed check, never a crashed suite
        witness = {"error": f"{type(exc).__name__}: {exc}"}
    if witness is not None:
        witness = {"bindings": dict(b), **witness}
    return CheckReport(rec.id, b, "pass" if witness is None else "fail", witness,
                       time.perf_counter() - start)


def check(id: str, bindings: Mapping[str, int]) -> CheckReport:
    return check_record(lookup(id), bindings)


def grid(rec: IdentityRecord, ranges: Optional[Mapping[str, int]],
         defaults: bool = False) -> List[Dict[str, int]]:
    """Parameter bindings for one record.

    With ``ranges=None`` every parameter runs to the record's default maximum.
    Otherwise a parameter missing from ``ranges`` yields an empty grid unless
    ``defaults`` is set, in which case it falls back to the record default.
    """
    his = []
    for p in rec.params:
        if ranges is not None and p in ranges:
            hi = min(ranges[p], rec.limit)
        elif ranges is None or defaults:
            hi = rec.default_max
        else:
            return []
        his.append(hi)
    points = [{}]
    for p, hi in zip(rec.params, his):
        points = [dict(pt, **{p: v}) for pt in points for v in range(hi + 1)]
    return points


def _run_task(task: Tuple[str, Tuple[Tuple[str, int], ...]]) -> CheckReport:
    id, items = task
    return check(id, dict(items))


def run_suite(ranges: Optional[Mapping[str, int]] = None, workers: int = 1,
              ids: Optional[Sequence[str]] = None, defaults: bool = False) -> List[CheckReport]:
    """Check every record over its grid; the result order ignores ``workers``."""
    if workers < 1:
        raise ValueError("workers must be positive")
    reg = registry()
    selected = sorted(reg) if ids is None else sorted(ids)
    tasks = [(id, tuple(sorted(b.items()))) for id in selected
             for b in grid(reg[id], ranges, defaults)]
    if workers == 1 or len(tasks) < 2:
        reports = [_run_task(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_task, tasks, chunksize=chunk))
    return sorted(reports, key=CheckReport.sort_key)
