"""Brute-force set partitions and the enumeration oracle for A_{n,k}.

Partitions of [n] are generated as restricted growth strings: ``rgs[i]`` is
the block index of element ``i+1``, with ``rgs[0] = 0`` and each entry at most
one more than the maximum before it.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple

from .combinatorics import WeightFamily
from .ring import MAX_BUDGET, Poly, substitute, sum_poly, t

DEFAULT_ORACLE_CAP = 12


class OracleCapError(ValueError):
    """Enumeration was asked for more elements than the oracle cap allows."""


def oracle_cap() -> int:
    raw = os.environ.get("PW_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_ORACLE_CAP


@dataclass(frozen=True)
class SetPartition:
    rgs: Tuple[int, ...]

    @cached_property
    def blocks(self) -> List[List[int]]:
        out: List[List[int]] = []
        for elem, b in enumerate(self.rgs, start=1):
            if b == len(out):
                out.append([])
            out[b].append(elem)
        return out

    @property
    def block_sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _check_cap(n: int, cap: Optional[int]) -> None:
    cap = oracle_cap() if cap is None else cap
    if n > cap:
        raise OracleCapError(f"refusing to enumerate partitions of [{n}]: cap is {cap}")


def _rgs_stream(n: int) -> Iterator[List[int]]:
    # Yields the same mutable list each time; callers copy if they keep it.
    if n == 0:
        yield []
        return
    a = [0] * n
    prefmax = [0] * n  # prefmax[i] = max(a[0..i])
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] > prefmax[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        prefmax[i] = max(prefmax[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            prefmax[j] = prefmax[i]


def enumerate_partitions(n: int, cap: Optional[int] = None) -> Iterator[SetPartition]:
    """Every partition of [n] exactly once, in lexicographic RGS order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_cap(n, cap)
    for a in _rgs_stream(n):
        yield SetPartition(tuple(a))


def weight(p: SetPartition, w: WeightFamily) -> Poly:
    out = Poly.const(1)
    for size in p.block_sizes:
        out = out * w.weight(size)
    return out


def largest_singleton(p: SetPartition) -> Optional[int]:
    best = None
    for b in p.blocks:
        if len(b) == 1 and (best is None or b[0] > best):
            best = b[0]
    return best


def _signature_counts(m: int) -> Dict[Optional[int], Counter]:
    """For partitions of [m]: largest singleton -> Counter of sorted block-size tuples."""
    out: Dict[Optional[int], Counter] = {}
    for a in _rgs_stream(m):
        sizes: Dict[int, int] = {}
        for b in a:
            sizes[b] = sizes.get(b, 0) + 1
        top = None
        for elem in range(m - 1, -1, -1):
            if sizes[a[elem]] == 1:
                top = elem + 1
                break
        out.setdefault(top, Counter())[tuple(sorted(sizes.values()))] += 1
    return out


def _monomial(sizes: Tuple[int, ...], budget: int) -> Poly:
    mono = Poly.const(1)
    for s in sizes:
        mono = mono * t(s, budget)
    return mono


_oracle_rows: Dict[Tuple[int, int], List[Poly]] = {}


def _symbolic_oracle_row(n: int, budget: int) -> List[Poly]:
    key = (n, budget)
    if key not in _oracle_rows:
        sig = _signature_counts(n + 1)
        row = []
        for k in range(n + 1):
            counts = sig.get(k + 1, Counter())
            row.append(sum_poly(c * _monomial(s, budget) for s, c in counts.items()))
        _oracle_rows[key] = row
    return _oracle_rows[key]


def oracle_A(n: int, k: int, w: WeightFamily, cap: Optional[int] = None) -> Poly:
    """Total weight of partitions of [n+1] whose largest singleton is k+1, by enumeration."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    _check_cap(n + 1, cap)
    # one symbolic path; numeric families are specializations of it
    sym = _symbolic_oracle_row(n, MAX_BUDGET if w.is_numeric else w.budget)[k]
    if not (w.is_numeric or w.suppress_singletons):
        return sym
    names = [v for v in sym.variables() if v.startswith("t")]
    if not w.is_numeric:
        names = [v for v in names if v == "t1"]
    return substitute(sym, {v: w.weight(int(v[1:])) for v in names})
