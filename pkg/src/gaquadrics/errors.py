"""Exception hierarchy shared by the algebra, framework and CLI layers."""


class QuadricError(Exception):
    """Base class for every error raised by this package."""


class AlgebraMismatchError(QuadricError, ValueError):
    """Operands belong to different algebras."""


class DegenerateError(QuadricError, ValueError):
    """Input configuration does not determine a unique answer."""


class NotInSpanError(QuadricError, ValueError):
    """A multivector is not in the subspace an extraction expects."""


class NumericError(QuadricError, ArithmeticError):
    """A numerical procedure cannot produce a result."""


class SingularVersorError(NumericError):
    pass


class SingularPointError(NumericError):
    """The gradient vanishes at the requested point."""


class FormulaDomainError(NumericError):
    pass


class ConvergenceError(NumericError):
    pass
