"""
Exact algebra: Q(i), F[X] and 2x2 matrices over either.
"""

from freiheit.algebra.gaussian import GAUSSIAN_ONE, GAUSSIAN_ZERO, GaussianRational
from freiheit.algebra.matrix import Mat2, RingElement, lambda_power
from freiheit.algebra.poly import NEG_INF, X, Poly, parse_degree, render_degree

__all__ = [
    "GaussianRational",
    "GAUSSIAN_ZERO",
    "GAUSSIAN_ONE",
    "Poly",
    "X",
    "NEG_INF",
    "render_degree",
    "parse_degree",
    "Mat2",
    "RingElement",
    "lambda_power",
]
