"""Exact invariants of Newton weighted-Le-Yomdin surface singularities."""

from .errors import (
    DegenerateError,
    InputError,
    NonIsolatedError,
    PolynomialSyntaxError,
    ResourceCapExceeded,
    WLYError,
)
from .poly import (
    Polynomial,
    parse,
    partial_derivative,
    resultant,
    squarefree_check,
    substitute_linear,
    substitute_power,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateError",
    "InputError",
    "NonIsolatedError",
    "PolynomialSyntaxError",
    "ResourceCapExceeded",
    "WLYError",
    "Polynomial",
    "parse",
    "partial_derivative",
    "resultant",
    "squarefree_check",
    "substitute_linear",
    "substitute_power",
]
