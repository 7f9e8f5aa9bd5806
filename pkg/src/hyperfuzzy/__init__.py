"""Fuzzy sets whose membership grades are hyperbolic (split-complex) numbers."""

from .hypnum import E1, E2, K, ONE, ZERO, Hyp, OrderMode, from_standard, parse, real, render
from .dfuzzy import DFuzzySet, Universe, new_set

__all__ = [
    "E1", "E2", "K", "ONE", "ZERO", "Hyp", "OrderMode", "from_standard", "parse", "real", "render",
    "DFuzzySet", "Universe", "new_set",
]
__version__ = "0.1.0"
