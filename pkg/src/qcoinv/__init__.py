"""Exact coinvariant computations for single-parameter quantum matrix algebras."""

from .coact import Coaction, beta_conjugation, coinvariants_basis, gamma_interior, rho_right, tau
from .exactnum import LaurentMatrix, LaurentPoly, kernel_basis, rank
from .fft import ExperimentParams, Report, classical_baseline, verify
from .lifting import GradedComplex, build_fft_complex, build_sft_complex, check_complex, exactness
from .qalgebra import FreeAlgebra, NCPoly, QuantumMatrix, Tensor, multiply
from .qhopf import GLElement, antipode, comultiply, counit, det_q, quantum_minor

__version__ = "0.1.0"

__all__ = [
    "Coaction",
    "beta_conjugation",
    "coinvariants_basis",
    "gamma_interior",
    "rho_right",
    "tau",
    "LaurentMatrix",
    "LaurentPoly",
    "kernel_basis",
    "rank",
    "ExperimentParams",
    "Report",
    "classical_baseline",
    "verify",
    "GradedComplex",
    "build_fft_complex",
    "build_sft_complex",
    "check_complex",
    "exactness",
    "FreeAlgebra",
    "NCPoly",
    "QuantumMatrix",
    "Tensor",
    "multiply",
    "GLElement",
    "antipode",
    "comultiply",
    "counit",
    "det_q",
    "quantum_minor",
]
