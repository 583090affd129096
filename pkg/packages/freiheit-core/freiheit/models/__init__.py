"""
Core data models for freiheit.
"""

from freiheit.models.freeness import IsometricDisk, JorgensenResult, SchottkyCertificate
from freiheit.models.groups import (
    GroupDescriptor,
    IofReport,
    MiofBound,
    QuotientReport,
    TheoremBReport,
)
from freiheit.models.hyperbolic import (
    BasepointSearch,
    MoebiusNumeric,
    ObstructionReport,
    ShortLoopBound,
    UHPoint,
)
from freiheit.models.magnus import (
    AlternatingWord,
    DegreeCheck,
    DegreeProfile,
    FreeProductCertificate,
    NormalizationCertificate,
    StepPrediction,
)
from freiheit.models.words import FreeWord

__all__ = [
    "AlternatingWord",
    "DegreeProfile",
    "DegreeCheck",
    "StepPrediction",
    "NormalizationCertificate",
    "FreeProductCertificate",
    "UHPoint",
    "MoebiusNumeric",
    "ObstructionReport",
    "BasepointSearch",
    "ShortLoopBound",
    "IsometricDisk",
    "SchottkyCertificate",
    "JorgensenResult",
    "FreeWord",
    "GroupDescriptor",
    "IofReport",
    "MiofBound",
    "TheoremBReport",
    "QuotientReport",
]
