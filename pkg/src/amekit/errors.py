"""Exception hierarchy shared by every amekit module."""


class AmeKitError(Exception):
    """Base class for all errors raised by amekit."""


class InputError(AmeKitError, ValueError):
    """Malformed or out-of-range arguments (bad digits, repeated sites, unknown names)."""


class ValidationError(AmeKitError, ValueError):
    """A numerical object fails a structural check (non-unitary, non-Hermitian, ...)."""


class UnsupportedConstructError(InputError):
    """A circuit uses a construct the qubit compiler cannot lower."""


class ConvergenceError(AmeKitError, ArithmeticError):
    """An iterative numerical routine did not converge."""
