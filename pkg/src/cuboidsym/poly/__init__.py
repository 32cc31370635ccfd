"""Sparse multivariate polynomials over the rationals."""

from .order import GREVLEX, LEX, MonomialOrder, parse_order
from .polynomial import (
    Monomial,
    Polynomial,
    eval_float,
    eval_terms,
    homogeneous_components,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    multidegree,
    poly_add,
    poly_mul,
    poly_pow,
    substitute,
)
from .table import VarTable, elementary_indices, elementary_name
from .textio import format_polynomial, parse, tokenize

__all__ = [
    "GREVLEX",
    "LEX",
    "Monomial",
    "MonomialOrder",
    "Polynomial",
    "VarTable",
    "elementary_indices",
    "elementary_name",
    "eval_float",
    "eval_terms",
    "format_polynomial",
    "homogeneous_components",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_mul",
    "multidegree",
    "parse",
    "parse_order",
    "poly_add",
    "poly_mul",
    "poly_pow",
    "substitute",
    "tokenize",
]
