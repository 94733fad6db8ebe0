"""Scalars, monomial orders, polynomials, and their text form."""

from .arith import is_homogeneous, lowest_degree, poly_arith, truncate
from .fields import FieldSpec
from .orders import Comparison, OrderKind, compare_monomials, local_revlex
from .parser import parse_poly, parse_ring
from .printer import format_matrix, format_poly, format_vector
from .rings import RingSpec

__all__ = [
    "Comparison",
    "FieldSpec",
    "OrderKind",
    "RingSpec",
    "compare_monomials",
    "format_matrix",
    "format_poly",
    "format_vector",
    "is_homogeneous",
    "local_revlex",
    "lowest_degree",
    "parse_poly",
    "parse_ring",
    "poly_arith",
    "truncate",
]
