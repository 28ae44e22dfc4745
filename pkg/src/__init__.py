"""
frontal-lab - relative curvature invariants of frontal surfaces
"""

__version__ = "1.0.0"

from .models import (
    Domain,
    ExtendabilityVerdict,
    FieldKind,
    FrontType,
    InvariantFrame,
    Provenance,
    SingularityReport,
    SmoothabilityVerdict,
    TerminationReason,
    TracedCurve,
)

__all__ = [
    "Domain",
    "ExtendabilityVerdict",
    "FieldKind",
    "FrontType",
    "InvariantFrame",
    "Provenance",
    "SingularityReport",
    "SmoothabilityVerdict",
    "TerminationReason",
    "TracedCurve",
]
