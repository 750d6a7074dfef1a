"""Exact computations with supercommutative rings, the super skew field
D = k[theta] and Pi-projective space."""

from .errors import SupergeoError
from .expr import parse
from .scalar import I, Scalar
from .superpoly import Parity, SuperPolynomial, VarTable, invert_unit, render, substitute
from .supermatrix import SuperMatrix, berezinian, inverse, matmul

__all__ = [
    "SupergeoError",
    "parse",
    "render",
    "I",
    "Scalar",
    "Parity",
    "SuperPolynomial",
    "VarTable",
    "invert_unit",
    "substitute",
    "SuperMatrix",
    "berezinian",
    "inverse",
    "matmul",
]

__version__ = "0.1.0"
