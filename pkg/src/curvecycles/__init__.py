"""Exact calculus of tautological cycles on powers of a curve and on its Jacobian."""

from .coeff import Poly
from .cycles import (
    FUNDAMENTAL,
    CycleExpr,
    E,
    K,
    Monomial,
    corr_apply,
    correspondence_compose,
    degree,
    diag_pull,
    diag_push,
    exterior,
    intersect,
    pull_proj,
    push_proj,
    xi_normalize,
)
from .dsl import format_expr, parse_expr
from .errors import CycleError
from .jacobian import JacExpr, sigma_push
from .moddiag import beta, big_b, big_gamma, gamma

__all__ = [
    "FUNDAMENTAL",
    "CycleError",
    "CycleExpr",
    "E",
    "JacExpr",
    "K",
    "Monomial",
    "Poly",
    "beta",
    "big_b",
    "big_gamma",
    "corr_apply",
    "correspondence_compose",
    "degree",
    "diag_pull",
    "diag_push",
    "exterior",
    "format_expr",
    "gamma",
    "intersect",
    "parse_expr",
    "pull_proj",
    "push_proj",
    "sigma_push",
    "xi_normalize",
]

__version__ = "0.1.0"
