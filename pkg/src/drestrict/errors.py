"""Exception hierarchy shared by the builders, verifiers and the CLI."""


class DRestrictError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class NotPrimePower(DRestrictError, ValueError):
    pass


class DivisionByZero(DRestrictError, ZeroDivisionError):
    pass


class RegimeViolation(DRestrictError, ValueError):
    pass


class Infeasible(DRestrictError, ValueError):
    pass


class TooMany(DRestrictError, ValueError):
    pass


class AlphabetTooSmall(DRestrictError, ValueError):
    pass


class EpsilonInfeasible(DRestrictError, ValueError):
    pass


class DegreeMismatch(DRestrictError, ValueError):
    pass


class InsufficientAlphabet(DRestrictError, ValueError):
    pass


class DomainError(DRestrictError, ValueError):
    pass


class ParseError(DRestrictError, ValueError):
    pass


class BudgetExceeded(DRestrictError):
    """Raised instead of sampling when an exhaustive check is too large (exit 3)."""
