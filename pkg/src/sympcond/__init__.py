"""Exact computation in GSp_2g(Z/nZ) and conductors of open subgroups of GSp_2g(Zhat)."""

from .conductor import (
    ConductorReport,
    OpenSubgroup,
    check_index_divisibility,
    compute_conductor,
    conductor,
    conductor_bound,
    level_raise,
)
from .modarith import ModMatrix, Modulus
from .subgroup import FiberSpec, FiniteSubgroup, close, fiber_product
from .sympgroup import SymplecticContext, gsp_generators, gsp_order_n, kernel_generators, sp_generators, sp_order_n

__all__ = [
    "ConductorReport",
    "FiberSpec",
    "FiniteSubgroup",
    "ModMatrix",
    "Modulus",
    "OpenSubgroup",
    "SymplecticContext",
    "check_index_divisibility",
    "close",
    "compute_conductor",
    "conductor",
    "conductor_bound",
    "fiber_product",
    "gsp_generators",
    "gsp_order_n",
    "kernel_generators",
    "level_raise",
    "sp_generators",
    "sp_order_n",
]
