"""Finite-field irreducibility censuses with wreath-product predictions."""

from .errors import DomainError
from .ffield import (FieldCtx, FieldElem, abs_trace, arith, embedding,
                     enumerate_field, is_square, make_field)
from .polyring import (Poly, compose, count_monic_irreducible, derivative,
                       discriminant, fact_type, factor, gcd, is_irreducible,
                       is_separable, monic_polys, roots_in_splitting_field)

__all__ = [
    "DomainError",
    "FieldCtx", "FieldElem", "abs_trace", "arith", "embedding",
    "enumerate_field", "is_square", "make_field",
    "Poly", "compose", "count_monic_irreducible", "derivative",
    "discriminant", "fact_type", "factor", "gcd", "is_irreducible",
    "is_separable", "monic_polys", "roots_in_splitting_field",
]
