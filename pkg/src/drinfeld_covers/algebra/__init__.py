"""Exact arithmetic: prime fields, extension towers, F_q[T] and its quotients."""

from drinfeld_covers.algebra.field import FiniteField, is_prime
from drinfeld_covers.algebra.grammar import (
    ParseError,
    format_element,
    format_matrix,
    parse_element,
    parse_matrix,
    parse_poly,
)
from drinfeld_covers.algebra.poly import (
    CapExceeded,
    Poly,
    factor_monic,
    gcd,
    is_irreducible,
    monic_irreducibles,
    smallest_irreducible,
)
from drinfeld_covers.algebra.residue import ResidueRing
from drinfeld_covers.algebra.tower import (
    GF,
    extend_field,
    field_from_modulus,
    field_from_tower,
    frobenius,
    level_over,
    prime_field,
    roots_over,
)

__all__ = [
    "GF",
    "CapExceeded",
    "FiniteField",
    "ParseError",
    "Poly",
    "ResidueRing",
    "extend_field",
    "factor_monic",
    "field_from_modulus",
    "field_from_tower",
    "format_element",
    "format_matrix",
    "frobenius",
    "gcd",
    "is_irreducible",
    "is_prime",
    "level_over",
    "monic_irreducibles",
    "parse_element",
    "parse_matrix",
    "parse_poly",
    "prime_field",
    "roots_over",
    "smallest_irreducible",
]
