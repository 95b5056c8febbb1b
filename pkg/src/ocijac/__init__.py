"""Generalized Jacobian rings of open complete intersections, computed
degreewise with exact linear algebra."""

from .graded import Configuration, GradedIndex, basis_A, dim_A, ideal_piece_span, jacobian_generators
from .linalg import DEFAULT_PRIME, QQ, SECOND_PRIME, ExactMatrix, FieldSpec
from .poly import Polynomial, parse_polynomial
from .quotient import basis_B, dim_B, multiply_B, normal_form

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "DEFAULT_PRIME",
    "ExactMatrix",
    "FieldSpec",
    "GradedIndex",
    "Polynomial",
    "QQ",
    "SECOND_PRIME",
    "basis_A",
    "basis_B",
    "dim_A",
    "dim_B",
    "ideal_piece_span",
    "jacobian_generators",
    "multiply_B",
    "normal_form",
    "parse_polynomial",
]
