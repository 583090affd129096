"""
Certification and calculus services for freiheit.
"""

from freiheit.services.freeness import FreenessService
from freiheit.services.groupcalc import GroupCalcService
from freiheit.services.hyperbolic import HyperbolicService
from freiheit.services.magnus import MagnusService

__all__ = [
    "MagnusService",
    "HyperbolicService",
    "FreenessService",
    "GroupCalcService",
]
