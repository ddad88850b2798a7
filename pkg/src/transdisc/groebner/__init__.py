"""Groebner bases and the ideal toolbox."""
from .basis import DivisionCertificate, GroebnerBasis, groebner, is_groebner, s_polynomial
from .engine import DEFAULT_BUDGET, Budget, budget_scope, current_budget
from .ideal import (
    Colength,
    Ideal,
    as_ideal,
    eliminate,
    exact_divide,
    ideal_equality,
    ideal_membership,
    intersect,
    krull_dimension,
    local_colength_at,
    local_colength_at_origin,
    localized_colength,
    quotient,
    quotient_dim,
    saturate,
    saturate_chain,
    standard_monomials,
)

__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "budget_scope",
    "current_budget",
    "Colength",
    "DivisionCertificate",
    "GroebnerBasis",
    "Ideal",
    "as_ideal",
    "eliminate",
    "exact_divide",
    "groebner",
    "ideal_equality",
    "ideal_membership",
    "intersect",
    "is_groebner",
    "krull_dimension",
    "local_colength_at",
    "local_colength_at_origin",
    "localized_colength",
    "quotient",
    "quotient_dim",
    "s_polynomial",
    "saturate",
    "saturate_chain",
    "standard_monomials",
]
from .solve import rational_points, univariate_eliminant  # noqa: E402

__all__ += ["rational_points", "univariate_eliminant"]
