"""Foundation layer: grids, quadrature, scalar solvers, dense eigensolvers."""

from .grids import MomentumGrid, OperatorMatrix
from .linalg import derivative_matrix, eig_generalized, eig_sym
from .quadrature import (
    QuadratureRule,
    gauss_legendre,
    integrate,
    integrate_semi_infinite,
    semi_infinite,
)
from .solvers import find_root, golden_section, minimize_scalar

__all__ = [
    "MomentumGrid",
    "OperatorMatrix",
    "QuadratureRule",
    "derivative_matrix",
    "eig_generalized",
    "eig_sym",
    "find_root",
    "gauss_legendre",
    "golden_section",
    "integrate",
    "integrate_semi_infinite",
    "minimize_scalar",
    "semi_infinite",
]
