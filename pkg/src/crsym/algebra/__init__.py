"""Exact arithmetic, polynomials and rational linear algebra."""

from .linalg import RatMatrix, in_span, kernel_basis, rank, solve_unique, sparse_kernel_basis
from .numbers import ONE, ZERO, GaussRational, I, Rational, as_gauss
from .poly import DimensionError, HoloPoly, MixedPoly, det, monomials_of_degree

__all__ = [
    "Rational",
    "GaussRational",
    "as_gauss",
    "ZERO",
    "ONE",
    "I",
    "HoloPoly",
    "MixedPoly",
    "DimensionError",
    "det",
    "poly_mul",
    "conjugate",
    "partial",
    "monomials_of_degree",
    "RatMatrix",
    "kernel_basis",
    "sparse_kernel_basis",
    "rank",
    "in_span",
    "solve_unique",
]


def poly_mul(p, q):
    return p * q


def conjugate(p: MixedPoly) -> MixedPoly:
    return p.conjugate()


def partial(p: HoloPoly, var: int) -> HoloPoly:
    return p.partial(var)
