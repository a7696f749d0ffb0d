"""Exception hierarchy for qfano."""


class QFanoError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(QFanoError, ValueError):
    pass


class NoConvergence(QFanoError, ArithmeticError):
    pass


class DomainError(QFanoError, ValueError):
    """A matrix function was evaluated outside its domain."""


class DimMismatch(QFanoError, ValueError):
    pass


class ShapeMismatch(QFanoError, ValueError):
    pass


class OutOfRange(QFanoError, ValueError):
    pass


class TruncationOverflow(QFanoError, ValueError):
    """The Fock-space cutoff needed for a coherent state exceeds the cap."""


class UnsupportedEnsemble(QFanoError, ValueError):
    pass


class NotDensityOperator(QFanoError, ValueError):
    pass


class ConfigError(QFanoError, ValueError):
    pass
