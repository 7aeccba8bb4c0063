"""Domain errors.

Every error carries a short machine-readable ``kind`` and a ``details`` dict so
that the service and the CLI can serialize it without string parsing.
"""


class StokesError(Exception):
    kind = "StokesError"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {"kind": self.kind, "message": self.message, "details": self.details}


class EqualFactors(StokesError):
    kind = "EqualFactors"


class StokesDirectionHit(StokesError):
    kind = "StokesDirectionHit"


class IrrationalArgument(StokesError):
    kind = "IrrationalArgument"


class AssumptionViolation(StokesError):
    kind = "AssumptionViolation"


class UnsupportedTwist(StokesError):
    kind = "UnsupportedTwist"


class NonGaussianCoefficient(StokesError):
    kind = "NonGaussianCoefficient"


class MalformedDatum(StokesError):
    kind = "MalformedDatum"


class BasisNotTransverse(StokesError):
    kind = "BasisNotTransverse"


class PivotNotUnit(StokesError):
    kind = "PivotNotUnit"


class InconsistentSystem(StokesError):
    kind = "InconsistentSystem"


class NotABasis(StokesError):
    kind = "NotABasis"


class NotInvertible(StokesError):
    kind = "NotInvertible"
