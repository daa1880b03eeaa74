"""Exact zonotopal algebra: matroid activities, P- and D-spaces, their dual
bases, forward exchange families and exact spline evaluation."""

from zonotopal.kernels import BACKEND
from zonotopal.linalg import ContractError, DimensionError, Matrix, SingularMatrixError
from zonotopal.matroid import VectorList, bases, tutte, tutte_restricted, zonotope_volume
from zonotopal.forward_exchange import FEM, fem_tutte, is_forward_exchange, is_placible, standard_families
from zonotopal.polynomial import MPoly, kernel_of_differential_ideal, least_space, pair
from zonotopal.spaces import (
    SpaceBasis,
    bcyr_basis,
    d_space_basis,
    dual_basis_oracle,
    gram_matrix,
    p_space_basis,
    power_ideal_kernel,
)
from zonotopal.splines import box_spline_eval, choose_generic_c, r_polynomial, t_spline_eval

__version__ = "0.1.0"
