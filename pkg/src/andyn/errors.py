"""Exception hierarchy shared by all modules."""


class AndynError(Exception):
    """Base class for every error raised by the package."""


class PortArityMismatch(AndynError, ValueError):
    pass


class InvalidPorts(AndynError, ValueError):
    pass


class UnknownSymbol(AndynError, KeyError):
    pass


class SizeBoundExceeded(AndynError, RuntimeError):
    pass


class WidthMismatch(AndynError, ValueError):
    pass


class InvalidDecomposition(AndynError, ValueError):
    pass


class InvalidNode(AndynError, KeyError):
    pass


class InvalidPath(AndynError, ValueError):
    pass


class FamilyMismatch(AndynError, ValueError):
    pass


class FormulaSyntaxError(AndynError, SyntaxError):
    """Parse failure; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FreeVariable(AndynError, ValueError):
    pass


class ArityMismatch(AndynError, ValueError):
    pass


class KindMismatch(AndynError, ValueError):
    pass


class SizeMismatch(AndynError, ValueError):
    pass


class BudgetExceeded(AndynError, ValueError):
    pass


class PreconditionViolated(AndynError, ValueError):
    pass


class ConditionViolation(AndynError, ValueError):
    pass


class ArithmeticInfeasible(AndynError, ValueError):
    pass


class ModeViolation(AndynError, ValueError):
    pass
