"""Exact computation of largest-singleton statistics of weighted set partitions."""

from .combinatorics import WeightFamily, complete_bell, partial_bell
from .ring import Poly, parse
from .singleton import a_explicit, a_recurrence, a_umbral, build_triangle

__all__ = [
    "Poly",
    "WeightFamily",
    "a_explicit",
    "a_recurrence",
    "a_umbral",
    "build_triangle",
    "complete_bell",
    "parse",
    "partial_bell",
]
__version__ = "0.1.0"
