"""Exact arithmetic substrate: integer polynomials, Q[x]/(f), rational linear algebra."""
from fractions import Fraction as Rational

from netctrl.exactalg.field import FieldElement, ModulusMismatch, NumberField
from netctrl.exactalg.linalg import (
    DimensionMismatch,
    ZeroVector,
    char_poly,
    matmul,
    null_space,
    null_space_over_field,
    rational_rank,
    verify_eigenpair,
)
from netctrl.exactalg.poly import (
    GRAPH_FACTOR_DEGREE,
    MAX_FACTOR_DEGREE,
    BothZero,
    PolynomialError,
    DegreeTooLarge,
    IntegerPolynomial,
    distinct_factors,
    exact_quotient,
    format_poly,
    irreducible_factors,
    parse_poly,
    poly_gcd,
)

__all__ = [
    "GRAPH_FACTOR_DEGREE", "MAX_FACTOR_DEGREE", "BothZero", "PolynomialError", "DegreeTooLarge", "DimensionMismatch", "FieldElement", "IntegerPolynomial",
    "ModulusMismatch", "NumberField", "Rational", "ZeroVector", "char_poly", "distinct_factors",
    "exact_quotient", "format_poly", "irreducible_factors", "matmul", "null_space",
    "null_space_over_field", "parse_poly", "poly_gcd", "rational_rank", "verify_eigenpair",
]
