"""Error types shared by all modules.

Every error carries a stable string ``code`` that the CLI reports verbatim.
"""

from __future__ import annotations


class CykError(Exception):
    code = "CykError"
    #: CLI exit status: 2 for bad input, 1 for a failed numerical/check step.
    exit_status = 2


class DuplicateBranchPoint(CykError):
    code = "DuplicateBranchPoint"


class EvenCount(CykError):
    code = "EvenCount"


class UnsupportedBranchPoints(CykError):
    code = "UnsupportedBranchPoints"


class QuadratureFailure(CykError):
    code = "QuadratureFailure"
    exit_status = 1


class SingularABlock(CykError):
    code = "SingularABlock"
    exit_status = 1


class PathThroughBranchPoint(CykError):
    code = "PathThroughBranchPoint"
    exit_status = 1


class NotPositiveDefinite(CykError):
    code = "NotPositiveDefinite"


class NonSquare(CykError):
    code = "NonSquare"


class NotInDomain(CykError):
    code = "NotInDomain"


class SingularDenominator(CykError):
    code = "SingularDenominator"
    exit_status = 1


class ParityMismatch(CykError):
    code = "ParityMismatch"


class InconsistentDims(CykError):
    code = "InconsistentDims"


class DimensionMismatch(CykError):
    code = "DimensionMismatch"


class NonConstantBasis(CykError):
    code = "NonConstantBasis"


class StepTooLarge(CykError):
    code = "StepTooLarge"
    exit_status = 1


class NotGeneralPosition(CykError):
    code = "NotGeneralPosition"
    exit_status = 1


class GTooLarge(CykError):
    code = "GTooLarge"
