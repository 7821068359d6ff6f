"""Exception hierarchy shared by the library and the command line front end."""


class MilnorkitError(Exception):
    """Base class for all library errors."""


class InvalidInputError(MilnorkitError, ValueError):
    """Input violates a documented precondition."""


class SingularInputError(InvalidInputError):
    """A point or curve comes too close to a critical value."""


class NumericalError(MilnorkitError, ArithmeticError):
    """A numerical procedure failed to converge or bracket."""


class QuadratureError(NumericalError):
    pass


class BracketError(NumericalError):
    pass
