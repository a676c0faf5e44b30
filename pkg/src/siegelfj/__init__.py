"""Fourier expansions of degree two Siegel modular forms of even weight,
computed from truncated formal Fourier-Jacobi expansions."""
from ._backend import BACKEND
from .elliptic import QSeries, delta, dim_elliptic, eisenstein, mf_basis
from .errors import (
    ParseError, PrecisionCapError, PrecisionError, SymmetryError, UnsupportedWeightError,
)
from .formal_fj import (
    FMBasis, FormalFJTruncation, SiegelFourier, compute_siegel_space, extract_siegel_fourier,
    index_set_siegel, precision_floor, reduce_form, solve_fm_space,
)
from .jacobi import (
    JacobiBasis, JacobiExpansion, WeakJacobi, canonicalize, jacobi_basis, jacobi_mul,
    specialize_z0, weak_generators,
)
from .linalg import CoeffVector, EchelonBasis, echelonize, in_rowspace, nullspace
from .oracles import dim_siegel_even, saito_kurokawa_lift, siegel_product

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CoeffVector", "EchelonBasis", "FMBasis", "FormalFJTruncation", "JacobiBasis",
    "JacobiExpansion", "ParseError", "PrecisionCapError", "PrecisionError", "QSeries",
    "SiegelFourier", "SymmetryError", "UnsupportedWeightError", "WeakJacobi", "canonicalize",
    "compute_siegel_space", "delta", "dim_elliptic", "dim_siegel_even", "echelonize",
    "eisenstein", "extract_siegel_fourier", "in_rowspace", "index_set_siegel", "jacobi_basis",
    "jacobi_mul", "mf_basis", "nullspace", "precision_floor", "reduce_form",
    "saito_kurokawa_lift", "siegel_product", "solve_fm_space", "specialize_z0",
    "weak_generators",
]
