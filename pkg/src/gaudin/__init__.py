"""Bethe algebra of the twisted gl_N Gaudin model, exactly, at desk scale.

Two sides of one correspondence:

* the spectral side: weight subspaces of tensor products of evaluation
  modules, the universal differential operator with matrix coefficients,
  and its simultaneous diagonalization;
* the function side: spaces of quasi-exponentials, Wronskians, fundamental
  differential operators, indicial exponents, and Bethe ansatz roots.

Construction-phase arithmetic is exact (rationals or Gaussian rationals);
floats appear only in the eigenvalue stage.
"""

__version__ = "0.1.0"

from .algebra import (
    ModuleSpec,
    Partition,
    build_embedded_module,
    enumerate_weight_basis,
    find_singular_vector,
)
from .bae import (
    RootCoordinates,
    bae_residual,
    factorized_operator,
    newton_solve,
    root_coordinates_from_space,
    weight_function,
)
from .betheop import BetheOperator, build_bethe_operator
from .diffops import DiffOp, QuasiExp, rdet, wronskian
from .polynomials import Poly
from .ratfun import RatFun, rational_reconstruct
from .spaces import (
    QuasiExpSpace,
    char_at_infinity,
    fundamental_operator,
    indicial_data,
    membership_test,
    wronskian_of_space,
)
from .spectral import (
    SpectralConfig,
    character_to_operator,
    joint_diagonalize,
    kernel_from_operator,
    spectrum_analysis,
)

__all__ = [
    "BetheOperator",
    "DiffOp",
    "ModuleSpec",
    "Partition",
    "Poly",
    "QuasiExp",
    "QuasiExpSpace",
    "RatFun",
    "RootCoordinates",
    "SpectralConfig",
    "bae_residual",
    "build_bethe_operator",
    "build_embedded_module",
    "char_at_infinity",
    "character_to_operator",
    "enumerate_weight_basis",
    "factorized_operator",
    "find_singular_vector",
    "fundamental_operator",
    "indicial_data",
    "joint_diagonalize",
    "kernel_from_operator",
    "membership_test",
    "newton_solve",
    "rational_reconstruct",
    "rdet",
    "root_coordinates_from_space",
    "spectrum_analysis",
    "weight_function",
    "wronskian",
    "wronskian_of_space",
]
