from .field import FieldElement, FieldSpec, field_arith, field_make, is_prime, prime_field
from .linalg import (
    Echelon,
    in_row_space,
    mat_solve_kit,
    nullspace,
    rank,
    row_basis,
    rref,
    solve,
    submatrix_rank,
)
from .poly import (
    NEG_INF,
    Extension,
    Polynomial,
    cyclotomic_cosets,
    extension,
    minimal_polynomial,
    multiplicative_order,
    poly_toolkit,
    x_pow_minus_one,
)

__all__ = [
    "NEG_INF",
    "Echelon",
    "Extension",
    "FieldElement",
    "FieldSpec",
    "Polynomial",
    "cyclotomic_cosets",
    "extension",
    "field_arith",
    "field_make",
    "in_row_space",
    "is_prime",
    "mat_solve_kit",
    "minimal_polynomial",
    "multiplicative_order",
    "nullspace",
    "poly_toolkit",
    "prime_field",
    "rank",
    "row_basis",
    "rref",
    "solve",
    "submatrix_rank",
    "x_pow_minus_one",
]
