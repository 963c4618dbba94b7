"""Exact computations with matrix encodings of 2-nondegenerate CR symbols."""
from .exactnum import RealScalar, Scalar, parse_scalar, real_sign
from .linalg import Mat, Subspace, kernel, solve_linear
from .symbol import CRSymbolData, analyze, validate

__all__ = [
    "CRSymbolData",
    "Mat",
    "RealScalar",
    "Scalar",
    "Subspace",
    "analyze",
    "kernel",
    "parse_scalar",
    "real_sign",
    "solve_linear",
    "validate",
]

__version__ = "0.1.0"
