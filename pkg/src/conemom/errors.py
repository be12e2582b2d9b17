"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (used by the CLI error
object) and an ``exit_code``: 2 for bad input, 3 for a failed certification.
"""

from __future__ import annotations


class ConemomError(Exception):
    code = "ConemomError"
    exit_code = 2


class ZeroPolynomial(ConemomError):
    code = "ZeroPolynomial"


class NonPositiveScale(ConemomError):
    code = "NonPositiveScale"


class InconsistentEtaEinstein(ConemomError):
    code = "InconsistentEtaEinstein"


class DegenerateBoundary(ConemomError):
    code = "DegenerateBoundary"


class DegenerateProfile(ConemomError):
    code = "DegenerateProfile"


class PoleAtMinusOne(ConemomError):
    code = "PoleAtMinusOne"


class NotPositiveNearZero(ConemomError):
    code = "NotPositiveNearZero"


class PoleInDomain(ConemomError):
    code = "PoleInDomain"


class SignAssumptionFailed(ConemomError):
    code = "SignAssumptionFailed"
    exit_code = 3


class OutsideDomain(ConemomError):
    code = "OutsideDomain"


class OutsideRange(ConemomError):
    code = "OutsideRange"


class QuadratureBudgetExceeded(ConemomError):
    code = "QuadratureBudgetExceeded"
    exit_code = 3


class EmptyInterior(ConemomError):
    code = "EmptyInterior"


class TooManyFacets(ConemomError):
    code = "TooManyFacets"


class AmbiguousGamma(ConemomError):
    code = "AmbiguousGamma"


class BranchCutHit(ConemomError):
    code = "BranchCutHit"
    exit_code = 3


class CertificationFailed(ConemomError):
    code = "CertificationFailed"
    exit_code = 3
