"""
Numerical kernels: special functions, matrix exponential, quadrature wavefunctions.
"""

from .special_functions import bessel_i, coherent_overlap, log_factorial
from .matrix_exp import MAX_EXPM_DIM, matrix_exponential
from .hermite import hermite_table, hermite_wavefunction

__all__ = [
    "bessel_i",
    "coherent_overlap",
    "log_factorial",
    "MAX_EXPM_DIM",
    "matrix_exponential",
    "hermite_table",
    "hermite_wavefunction",
]
