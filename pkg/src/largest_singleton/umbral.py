"""Umbrae as finite moment sequences, evaluated linearly.

An :class:`UmbralExpr` is a univariate polynomial in a formal symbol ``U``
with :class:`~largest_singleton.ring.Poly` coefficients.  Evaluating it
against an umbra replaces ``U**j`` by the j-th moment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .combinatorics import WeightFamily, complete_bell_value
from .ring import ONE, ZERO, Poly, Scalar, sum_poly


class UmbralDegreeError(ValueError):
    """An expression needs a moment beyond the umbra's truncation."""


@dataclass(frozen=True)
class Umbra:
    moments: Tuple[Poly, ...]
    label: str = ""

    def __post_init__(self):
        if not self.moments or self.moments[0] != ONE:
            raise ValueError("an umbra must have M_0 = 1")

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    @classmethod
    def from_values(cls, values: Sequence["Poly | Scalar"], label: str = "") -> "Umbra":
        return cls(tuple(Poly.coerce(v) for v in values), label)


@dataclass(frozen=True)
class UmbralExpr:
    coeffs: Tuple[Poly, ...] = ()

    @classmethod
    def symbol(cls) -> "UmbralExpr":
        return cls((ZERO, ONE))

    @classmethod
    def scalar(cls, c: "Poly | Scalar") -> "UmbralExpr":
        return cls._trim((Poly.coerce(c),))

    @staticmethod
    def _trim(cs) -> "UmbralExpr":
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        return UmbralExpr(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _lift(self, other) -> "UmbralExpr":
        return other if isinstance(other, UmbralExpr) else UmbralExpr.scalar(other)

    def __add__(self, other) -> "UmbralExpr":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return self._trim(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UmbralExpr":
        return UmbralExpr(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UmbralExpr":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "UmbralExpr":
        return self._lift(other) - self

    def __mul__(self, other) -> "UmbralExpr":
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return UmbralExpr()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._trim(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UmbralExpr":
        if e < 0:
            raise ValueError("negative exponent")
        out = UmbralExpr.scalar(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out


def umbra_from_family(w: WeightFamily, order: int, label: str | None = None) -> Umbra:
    """Moments M_j = Y_j(w) for j <= order."""
    return Umbra.from_values([complete_bell_value(j, w) for j in range(order + 1)],
                             label if label is not None else w.label())


def umbral_eval(e: UmbralExpr, u: Umbra) -> Poly:
    if e.degree > u.order:
        raise UmbralDegreeError(
            f"expression of degree {e.degree} needs moments past M_{u.order} of {u.label or 'umbra'}")
    return sum_poly(c * m for c, m in zip(e.coeffs, u.moments) if c)


def shifted_umbra(u: Umbra, c: Scalar) -> Umbra:
    """The umbra u + c: M'_n = sum_j C(n, j) c^(n-j) M_j."""
    c = Fraction(c)
    moments = []
    for n in range(u.order + 1):
        moments.append(sum_poly(math.comb(n, j) * c ** (n - j) * u.moments[j] for j in range(n + 1)))
    suffix = f"{'+' if c >= 0 else '-'}{abs(c)}"
    return Umbra(tuple(moments), f"({u.label}){suffix}")


# Named umbrae.  D is P - 1: its moments are the derangement numbers.
_FAMILY_UMBRAE = {
    "Y": WeightFamily.symbolic,
    "P": lambda: WeightFamily("permutation"),
    "I": lambda: WeightFamily("involution"),
    "M": lambda: WeightFamily("involution").without_singletons(),
    "L": lambda: WeightFamily("forest"),
}


def named_umbra(name: str, order: int) -> Umbra:
    if name in _FAMILY_UMBRAE:
        return umbra_from_family(_FAMILY_UMBRAE[name](), order, name)
    if name == "B":
        return umbra_from_family(WeightFamily.ones(max(order, 64)), order, "B")
    if name == "D":
        return Umbra(shifted_umbra(named_umbra("P", order), -1).moments, "D")
    raise ValueError(f"unknown umbra {name!r}")
