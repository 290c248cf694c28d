"""Exception hierarchy shared by every module."""


class SensitivityError(Exception):
    """Base class for all errors raised by pccsens."""


class InputError(SensitivityError, ValueError):
    """Caller supplied data that violates a documented precondition."""


class InsufficientDataError(InputError):
    def __init__(self, message: str = "insufficient data") -> None:
        super().__init__(message)


class PValueUndefinedError(InsufficientDataError):
    def __init__(self, message: str = "p-value undefined: df < 1") -> None:
        super().__init__(message)


class DegenerateVarianceError(InputError):
    def __init__(self, message: str = "degenerate variance") -> None:
        super().__init__(message)


class InternalError(SensitivityError, RuntimeError):
    """An internal invariant was violated. Never a user mistake."""
