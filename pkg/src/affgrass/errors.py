"""Shared exception types."""


class AffgrassError(Exception):
    pass


class PrecisionLoss(AffgrassError):
    """A valuation or coefficient could not be determined at the working precision."""


class DivisionByZero(AffgrassError):
    pass


class SingularMatrix(AffgrassError):
    pass


class GaussFailure(AffgrassError):
    """A leading principal minor vanishes up to precision; no LTU decomposition."""


class InconsistentFamily(AffgrassError):
    """Support numbers do not define a positive orthogonal vertex family."""


class NotMV(AffgrassError):
    """No Weyl twist makes the two edge-path data braid-consistent."""


class ShapeMismatch(AffgrassError):
    pass


class NormalPositionRequired(AffgrassError):
    pass


class PatternMismatch(AffgrassError):
    pass


class RetryExhausted(AffgrassError):
    pass


class PreconditionViolated(AffgrassError):
    pass


class BudgetExceeded(AffgrassError):
    pass


class PavingVerificationFailed(AffgrassError):
    """A paving step or point-count check failed; the instance is in the message."""
