"""Exact rationals and sparse multivariate polynomials.

Every quantity in the package lives in ``Q[t1, ..., tN, lam, y]``.  A monomial
is packed into a single Python int, one 16-bit slot per variable, with the
slots laid out so that integer comparison of two packed monomials is the
lexicographic order ``y > lam > tN > ... > t1``.  Pairing that with the total
degree gives the graded-lex order used for printing.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Fraction

DEFAULT_BUDGET = 16
MAX_BUDGET = 62

_BITS = 16
_MASK = (1 << _BITS) - 1
_LAM_SLOT = MAX_BUDGET
_Y_SLOT = MAX_BUDGET + 1
_NSLOTS = MAX_BUDGET + 2

Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]


class BudgetError(ValueError):
    """A weight variable t_j was requested beyond the configured budget."""


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _slot_of(name: str) -> int:
    if name in ("lam", "lambda", "λ"):
        return _LAM_SLOT
    if name == "y":
        return _Y_SLOT
    m = re.fullmatch(r"t(\d+)", name)
    if m is None:
        raise ValueError(f"unknown variable {name!r}")
    j = int(m.group(1))
    if not 1 <= j <= MAX_BUDGET:
        raise BudgetError(f"t{j} is outside t1..t{MAX_BUDGET}")
    return j - 1


def _slot_name(slot: int) -> str:
    if slot == _LAM_SLOT:
        return "lam"
    if slot == _Y_SLOT:
        return "y"
    return f"t{slot + 1}"


def _unpack(mono: int) -> Iterator[Tuple[int, int]]:
    slot = 0
    while mono:
        e = mono & _MASK
        if e:
            yield slot, e
        mono >>= _BITS
        slot += 1


def _degree(mono: int) -> int:
    d = 0
    while mono:
        d += mono & _MASK
        mono >>= _BITS
    return d


class Poly:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps packed monomials to nonzero coefficients; integral
    coefficients are held as ``int``.  Two polynomials are equal exactly when
    their term maps are equal, so ``==`` is mathematical equality.
    """

    __slots__ = ("_terms", "_hash", "_maxdeg")

    def __init__(self, terms: Mapping[int, Coeff] | None = None):
        if terms:
            self._terms = {m: _norm(c) for m, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None
        self._maxdeg = None

    @classmethod
    def _raw(cls, terms: Dict[int, Coeff]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        p._maxdeg = None
        return p

    # constructors

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls._raw({0: _norm(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({1 << (_BITS * _slot_of(name)): 1})

    @classmethod
    def coerce(cls, x: "Poly | Scalar") -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        if isinstance(x, _RationalABC):
            return cls.const(Fraction(x.numerator, x.denominator))
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    # inspection

    @property
    def terms(self) -> Dict[int, Coeff]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get(0, 0)

    def total_degree(self) -> int:
        if self._maxdeg is None:
            self._maxdeg = max((_degree(m) for m in self._terms), default=0)
        return self._maxdeg

    def degree_in(self, name: str) -> int:
        shift = _BITS * _slot_of(name)
        return max(((m >> shift) & _MASK for m in self._terms), default=0)

    def variables(self) -> set[str]:
        out = set()
        for m in self._terms:
            out.update(_slot_name(s) for s, _ in _unpack(m))
        return out

    def monomials(self) -> list[Tuple[Dict[str, int], Coeff]]:
        """Terms in canonical (graded-lex descending) order."""
        keys = sorted(self._terms, key=lambda m: (_degree(m), m), reverse=True)
        return [({_slot_name(s): e for s, e in _unpack(m)}, self._terms[m]) for m in keys]

    # arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if len(other._terms) > len(self._terms):
                big, small = other._terms, self._terms
            else:
                big, small = self._terms, other._terms
            out = dict(big)
            for m, c in small.items():
                v = out.get(m, 0) + c
                if v:
                    out[m] = _norm(v)
                else:
                    out.pop(m, None)
            return Poly._raw(out)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            out = dict(self._terms)
            v = out.get(0, 0) + other
            if v:
                out[0] = _norm(v)
            else:
                out.pop(0, None)
            return Poly._raw(out)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (Poly, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: _norm(c * other) for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly._raw({})
        if self.total_degree() + other.total_degree() > _MASK:
            raise OverflowError("monomial exponent would exceed 65535")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly._raw({ma + mb: _norm(ca * cb) for ma, ca in a.items()})
        out: Dict[int, Coeff] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                out[k] = get(k, 0) + ca * cb
        return Poly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        # scalar division only; polynomial division is out of scope
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, e: int) -> "Poly":
        return poly_pow(self, e)

    # text

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Poly({to_text(self)!r})"


ZERO = Poly()
ONE = Poly.const(1)
LAM = Poly.var("lam")
Y = Poly.var("y")


def t(j: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """The weight variable t_j; raises BudgetError when j exceeds ``budget``."""
    if j < 1:
        raise ValueError(f"weight index must be positive, got {j}")
    if j > budget:
        raise BudgetError(f"t{j} exceeds the variable budget N={budget}")
    return Poly.var(f"t{j}")


def arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_pow(a: Poly | Scalar, e: int) -> Poly:
    if e < 0:
        raise ValueError("negative exponent")
    a = Poly.coerce(a)
    result = ONE
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def poly_binomial(a: Poly | Scalar, k: int) -> Poly:
    """``a (a-1) ... (a-k+1) / k!`` for a polynomial top argument."""
    if k < 0:
        return ZERO
    a = Poly.coerce(a)
    out = ONE
    for i in range(k):
        out = out * (a - i)
    return out * Fraction(1, math.factorial(k))


def substitute(a: Poly, bindings: Mapping[str, "Poly | Scalar"]) -> Poly:
    """Simultaneous substitution of variables by polynomials or rationals."""
    slots = {}
    for name, val in bindings.items():
        slots[_slot_of(name)] = Poly.coerce(val)
    if not slots:
        return a
    powers: Dict[Tuple[int, int], Poly] = {}
    out = ZERO
    acc: Dict[int, Coeff] = {}
    for mono, c in a._terms.items():
        rest = 0
        factor = None
        for slot, e in _unpack(mono):
            if slot in slots:
                key = (slot, e)
                if key not in powers:
                    powers[key] = poly_pow(slots[slot], e)
                factor = powers[key] if factor is None else factor * powers[key]
            else:
                rest |= e << (_BITS * slot)
        if factor is None:
            acc[rest] = acc.get(rest, 0) + c
        else:
            out = out + factor * Poly._raw({rest: c})
    return out + Poly(acc)


def evaluate(a: Poly, bindings: Mapping[str, Scalar]) -> Coeff:
    """Substitute and insist the result is a constant."""
    return substitute(a, bindings).constant_value()


# canonical text

def _coeff_text(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def to_text(p: Poly) -> str:
    """Canonical text, e.g. ``3*t1^2*t2 - 1/2*y + 4``."""
    if not p:
        return "0"
    parts = []
    for i, (mono, c) in enumerate(p.monomials()):
        neg = c < 0
        mag = -c if neg else c
        factors = [f"{v}^{e}" if e > 1 else v for v, e in
                   sorted(mono.items(), key=lambda kv: _slot_of(kv[0]))]
        if not factors:
            body = _coeff_text(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_text(mag)] + factors)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse(text: str) -> Poly:
    """Inverse of :func:`to_text` (accepts the canonical format only)."""
    s = text.strip()
    if s == "0":
        return ZERO
    acc: Dict[int, Coeff] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff: Coeff = 1
        mono = 0
        for factor in m.group(2).strip().split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff = _norm(Fraction(factor))
                continue
            name, _, exp = factor.partition("^")
            mono += (int(exp) if exp else 1) << (_BITS * _slot_of(name))
        acc[mono] = acc.get(mono, 0) + sign * coeff
    return Poly(acc)


def as_scalar(x: "Poly | Scalar") -> Coeff:
    return x.constant_value() if isinstance(x, Poly) else _norm(x)


def sum_poly(items: Iterable["Poly | Scalar"]) -> Poly:
    acc: Dict[int, Coeff] = {}
    for it in items:
        if isinstance(it, Poly):
            for m, c in it._terms.items():
                acc[m] = acc.get(m, 0) + c
        elif it:
            acc[0] = acc.get(0, 0) + it
    return Poly(acc)
