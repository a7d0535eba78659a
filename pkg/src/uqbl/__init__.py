"""Exact free-field Fock modules of the level-one quantum affine algebra of type B_l^(1).

Coefficients live in ``Q(t)[u]/(u^2 - omega)`` with ``t = q^{1/2}`` and
``omega = t/(t^2 + 1)``, so every relation is checked as an identity of
rational functions rather than numerically.
"""

from .qscalar import OMEGA, ONE, Q, T, U, ZERO, Scalar, parse_scalar, q_int, q_pow
from .lattice import CartanData, cartan_data
from .fock import (
    FockModule,
    FockMonomial,
    FockSpace,
    FockVector,
    Sector,
    apply_G,
    basis_list,
    enumerate_basis,
    fock_module,
    g_eigenvalue,
    graded_dimensions,
)
from .currents import boson_op, chevalley, chevalley_op, fermion_op, phi_mode, x_mode, x_op
from .evalrep import eval_module
from .vertexop import FAMILIES, VOFamily, matrix_element, normalization_value, vo_family
from .report import Check, CheckResult, run_check
from .verify import GROUPS, RunConfig, run

__version__ = "0.1.0"

__all__ = [
    "OMEGA",
    "ONE",
    "Q",
    "T",
    "U",
    "ZERO",
    "Scalar",
    "parse_scalar",
    "q_int",
    "q_pow",
    "CartanData",
    "cartan_data",
    "FockModule",
    "FockMonomial",
    "FockSpace",
    "FockVector",
    "Sector",
    "apply_G",
    "basis_list",
    "enumerate_basis",
    "fock_module",
    "g_eigenvalue",
    "graded_dimensions",
    "boson_op",
    "chevalley",
    "chevalley_op",
    "fermion_op",
    "phi_mode",
    "x_mode",
    "x_op",
    "eval_module",
    "FAMILIES",
    "VOFamily",
    "matrix_element",
    "normalization_value",
    "vo_family",
    "Check",
    "CheckResult",
    "run_check",
    "GROUPS",
    "RunConfig",
    "run",
]
