"""Exception types shared across the package.

Two families matter to callers: ValidationError (bad inputs or
configuration, CLI exit code 1) and NumericalError (a computation that
was attempted but failed or produced something inconsistent, CLI exit
code 2).
"""


class AdiabaticDJError(Exception):
    """Base class for all package errors."""


class ValidationError(AdiabaticDJError):
    """Invalid argument, configuration, or state for the requested operation."""


class PromiseViolationError(ValidationError):
    """An oracle outside the constant/balanced promise was used where the
    promise is required (the target state would not be normalized)."""


class DimensionMismatchError(ValidationError):
    """Operands live in different Hilbert-space dimensions."""


class ScheduleError(ValidationError):
    """Schedule is non-monotone or violates s(0) = 0, s(T) = 1."""


class StepSizeError(ValidationError):
    """Integration step too coarse: dt * ||H|| must stay <= 0.1."""


class DegenerateInterpolationError(ValidationError):
    """Operation undefined for |<alpha|beta>| in {0, 1} (no coupled pair)."""


class NumericalError(AdiabaticDJError):
    """A numerical routine failed or violated an internal bound."""


class EigensolverError(NumericalError):
    """Dense Hermitian eigensolver did not converge."""


class BracketError(NumericalError):
    """No stable crossing bracket found below the configured search limit."""


class MajorityTieError(AdiabaticDJError):
    """Measurement histogram splits exactly evenly between the two verdict
    classes; re-sample with more shots to break the tie."""
