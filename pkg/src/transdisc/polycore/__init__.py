"""Exact sparse multivariate polynomials over the rationals."""
from .ring import RingSpec
from .order import MonomialOrder, LEX, GREVLEX, WGREVLEX
from .polynomial import Polynomial, QQ, to_rational
from .parser import parse_polynomial, parse_polynomials
from .polynomial import format_rational
from .ops import NotWeightedHomogeneous, dehomogenize, homogenize, partial_derivative, weighted_degree

__all__ = [
    "RingSpec",
    "MonomialOrder",
    "LEX",
    "GREVLEX",
    "WGREVLEX",
    "Polynomial",
    "QQ",
    "to_rational",
    "parse_polynomial",
    "parse_polynomials",
    "format_rational",
    "NotWeightedHomogeneous",
    "weighted_degree",
    "homogenize",
    "dehomogenize",
    "partial_derivative",
]
