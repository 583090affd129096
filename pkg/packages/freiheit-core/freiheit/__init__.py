"""
Freiheit Core Library

Certifies freeness and independence of 2x2 matrix groups, exactly through a
polynomial-matrix embedding and numerically through hyperbolic displacement,
and checks Euler characteristic inequalities on concrete examples.
"""

__version__ = "0.1.0"

from freiheit.config import FreiheitConfig, load_config

__all__ = [
    "load_config",
    "FreiheitConfig",
]
