"""Exception types raised by the toolkit."""


class TLAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(TLAlgebraError, ValueError):
    pass


class SizeError(TLAlgebraError, ValueError):
    """A construction would exceed the configured matrix dimension cap."""


class SiteIndexError(TLAlgebraError, IndexError):
    pass


class PreconditionError(TLAlgebraError, ValueError):
    pass


class ConvergenceError(TLAlgebraError, RuntimeError):
    pass


class ParameterError(TLAlgebraError, ValueError):
    pass


class InversionError(TLAlgebraError, ValueError):
    pass


class FamilyError(TLAlgebraError, ValueError):
    """Permutation supports of a generator family overlap or leave gaps."""


class ConstraintError(TLAlgebraError, ValueError):
    """An algebraic constraint failed; ``residual`` holds its measured size."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = float(residual)


class DomainError(TLAlgebraError, ValueError):
    pass


class PoleError(TLAlgebraError, ZeroDivisionError):
    pass


class ConsistencyError(TLAlgebraError, RuntimeError):
    pass
