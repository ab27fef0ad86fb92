"""Exception hierarchy shared by all sinckit modules."""


class SincKitError(Exception):
    """Base class for every error raised by sinckit."""


class InvalidParam(SincKitError, ValueError):
    pass


class OrderTooHigh(SincKitError, ValueError):
    pass


class OutOfRange(SincKitError, ValueError):
    pass


class OutOfRegime(SincKitError, ValueError):
    pass


class MissingFinitePart(SincKitError, ValueError):
    pass


class Unsupported(SincKitError, ValueError):
    pass


class BelowThreshold(SincKitError):
    """The closed form was requested at a lambda where it is not valid."""

    def __init__(self, lam, lambda_min):
        super().__init__(f"lambda={lam!r} is not above the validity threshold {lambda_min!r}")
        self.lam = lam
        self.lambda_min = lambda_min


class NumericalFailure(SincKitError):
    """A numerical procedure could not reach the requested tolerance."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotConverged(NumericalFailure):
    pass


class ToleranceNotMet(NumericalFailure):
    pass
