"""Exception hierarchy shared by every pfconflict module."""


class PFConflictError(Exception):
    """Base class for all library errors."""


class DomainError(PFConflictError, ValueError):
    """A scalar argument lies outside its admissible range."""


class ConstraintError(PFConflictError, ValueError):
    """A (mu, nu) pair violates mu^2 + nu^2 <= 1."""


class WeightError(PFConflictError, ValueError):
    """A weight vector is negative somewhere or does not sum to one."""


class ShapeError(PFConflictError, ValueError):
    pass


class ParseError(PFConflictError, ValueError):
    pass


class UnknownAgentError(PFConflictError, KeyError):
    pass


class ThresholdError(PFConflictError, ValueError):
    pass


class LossOrderError(PFConflictError, ValueError):
    """No monotonicity chain holds for a loss function."""
