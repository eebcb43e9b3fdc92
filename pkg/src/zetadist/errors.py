"""Exception types shared across the package."""


class ZetaDistError(Exception):
    """Base class for all package errors."""


class DomainError(ZetaDistError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation was requested at (or too close to) a pole."""


class RegionError(DomainError):
    """Parameters fall outside the validity region of the chosen representation."""


class NonConvergence(ZetaDistError, RuntimeError):
    """A series or quadrature failed to meet tolerance within its budget."""

    def __init__(self, message, *, best=None, err_estimate=None):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate


class InvalidDistribution(ZetaDistError, ValueError):
    """Parameters do not define a probability distribution.

    ``reason`` is a stable machine-readable tag, one of the REASON_* constants.
    """

    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


REASON_Z_OUT_OF_RANGE = "ZOutOfRange"
REASON_A_NOT_HALF = "ANotHalf"
REASON_POLE_SIGMA_ONE = "PoleSigmaOne"
REASON_SIGMA_OUT_OF_RANGE = "SigmaOutOfRange"
REASON_A_OUT_OF_RANGE = "AOutOfRange"
