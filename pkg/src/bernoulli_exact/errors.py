"""Exception types shared by the estimators and the CLI."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class NumericalFailure(ArithmeticError):
    """An iterative evaluation did not converge.

    Raised when a continued fraction exhausts its iteration budget or a
    root search loses its bracket. Usually signals pathological parameters.
    """


class UsageError(ValueError):
    """A caller asked for something that does not exist, e.g. an unknown method."""
