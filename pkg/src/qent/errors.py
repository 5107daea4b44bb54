"""Exception hierarchy shared by every qent module."""


class QentError(Exception):
    """Base class for all qent errors."""


class NonPositiveParameter(QentError, ValueError):
    pass


class Overdamped(QentError, ValueError):
    """Raised when gamma >= 2*omega0, so the shifted frequency is not real."""


class BadGridSpec(QentError, ValueError):
    pass


class WrongSpace(QentError, ValueError):
    pass


class CausticTime(QentError, ArithmeticError):
    """Raised when |sin(omega t)| falls below the caustic guard."""

    def __init__(self, t, sin_value=None):
        self.t = t
        self.sin_value = sin_value
        msg = f"caustic time t={t!r}"
        if sin_value is not None:
            msg += f" (|sin wt|={abs(sin_value):.3e})"
        super().__init__(msg)


class ZeroTime(QentError, ValueError):
    pass


class ZeroDamping(QentError, ValueError):
    pass


class NegativeQuantumNumber(QentError, ValueError):
    pass


class QuantumNumberTooLarge(QentError, ValueError):
    pass


class QuadratureFailure(QentError, ArithmeticError):
    pass


class NotNormalized(QentError, ValueError):
    pass


class GridTooSmall(QentError, ArithmeticError):
    """A density leaks into the grid edge, or a kernel is under-resolved."""


class TooFewPoints(QentError, ValueError):
    pass


class ConfigParseError(QentError, ValueError):
    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ConstraintViolation(QentError, ValueError):
    def __init__(self, message, cause=None):
        self.cause = cause
        super().__init__(message)
