from .poly import MultiPoly, Rational, parse_poly, format_poly, poly_ring, divmod_exact, exact_divide
from .groebner import Ideal, groebner, buchberger
from .linalg import Matrix, rref, rank, kernel, solve, solve_many, inverse, det, sparse_rank
from .finite import (
    FiniteAlgebra, QuotientAlgebra, quotient_algebra, is_unit, artinian_idempotents,
    trivial_algebra,
)
from . import upoly

__all__ = [
    "MultiPoly", "Rational", "parse_poly", "format_poly", "poly_ring", "divmod_exact",
    "exact_divide", "Ideal", "groebner", "buchberger", "Matrix", "rref", "rank", "kernel",
    "solve", "solve_many", "inverse", "det", "sparse_rank", "FiniteAlgebra",
    "QuotientAlgebra", "quotient_algebra", "is_unit", "artinian_idempotents",
    "trivial_algebra", "upoly",
]
