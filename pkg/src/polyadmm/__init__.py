"""Polynomial optimization by ADMM on a bilinearly constrained quadratic form."""

from .poly import Monomial, Polynomial, PopProblem, PolynomialParseError, parse_polynomial
from .reduction import (
    Lineage,
    QopProblem,
    Triple,
    lift_point,
    project_solution,
    reduce_to_qop,
    validate_qop,
)
from .admm import (
    AdmmConfig,
    ConfigurationError,
    DivergenceError,
    RhoBoundWarning,
    SolveReport,
    project_triple,
    rho_lower_bound,
    run,
    u_update,
    x_update_constrained,
    x_update_relaxed,
    z_update,
)

__version__ = "0.1.0"
