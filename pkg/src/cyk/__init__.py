"""Hyperelliptic curves, theta functions, the domain D_{g,g} and its Weil-Petersson geometry."""

from .curve import abel_jacobi, new_curve, period_matrix
from .domain import act, contains, embed_sp, transitive_witness
from .theta import ThetaCharacteristic, theta_with_info

__all__ = [
    "ThetaCharacteristic",
    "abel_jacobi",
    "act",
    "contains",
    "embed_sp",
    "new_curve",
    "period_matrix",
    "theta_with_info",
    "transitive_witness",
]
__version__ = "0.1.0"
