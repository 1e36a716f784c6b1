"""Exception hierarchy used across the package."""


class RelStandbyError(Exception):
    """Base class for all package errors."""


class DomainError(RelStandbyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DimensionError(RelStandbyError, ValueError):
    """A vector has the wrong length for the model it is passed to."""


class UnsupportedOperationError(RelStandbyError, NotImplementedError):
    """The model family does not provide the requested operation."""


class ValidationError(RelStandbyError, ValueError):
    """A system specification is structurally invalid.

    ``failures`` lists every violated condition, not just the first one.
    """

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class QuadratureError(RelStandbyError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are attached so callers
    can decide whether it is still usable.
    """

    def __init__(self, message, value=float("nan"), error_bound=float("inf")):
        self.value = value
        self.error_bound = error_bound
        super().__init__(f"{message} (best estimate {value!r} +/- {error_bound!r})")


class IntegrandNaNError(RelStandbyError, ArithmeticError):
    """The integrand returned a non-finite value."""

    def __init__(self, abscissa):
        self.abscissa = abscissa
        super().__init__(f"integrand is not finite at x={abscissa!r}")


class ConditioningError(RelStandbyError, ArithmeticError):
    """A conditional expectation was requested given a (numerically) null event."""


class ValidityError(RelStandbyError, ValueError):
    """The copula density is not a proper density and cannot be sampled."""


class EfficiencyError(RelStandbyError, RuntimeError):
    """Rejection sampling would accept too few proposals to be practical."""


class InsufficientConditioningError(RelStandbyError, RuntimeError):
    """Too few simulated draws satisfy a conditioning event."""
