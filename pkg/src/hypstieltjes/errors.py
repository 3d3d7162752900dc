"""Exception types shared across the library."""


class HypStieltjesError(Exception):
    """Base class for all library-specific errors."""


class InvalidSpec(HypStieltjesError):
    """Hypergeometric parameter set is unusable (e.g. poisoned denominator)."""


class InvalidParameters(HypStieltjesError):
    """Operation preconditions on auxiliary parameters fail."""


class NonConvergence(HypStieltjesError):
    """A series did not enter its decaying regime within the term cap."""


class UnsupportedFamily(HypStieltjesError):
    """Asymptotic machinery asked for a parameter family it does not know."""


class OrderUnavailable(HypStieltjesError):
    """Requested expansion order exceeds the implemented coefficient depth."""


class RecursionDepthExceeded(HypStieltjesError):
    """Log-sine recursion asked beyond the configured maximum level."""


class ConstantDeterminationFailure(HypStieltjesError):
    """Large-argument limit used to fix an integration constant did not stabilize."""


class IllConditionedFit(HypStieltjesError):
    """Tail-model fit residual is too large for the model to be trusted."""


class ToleranceNotMet(HypStieltjesError):
    """Best-effort result available but the requested tolerance was not reached."""

    def __init__(self, message, value=None, achieved=None):
        super().__init__(message)
        self.value = value
        self.achieved = achieved


class DomainError(HypStieltjesError):
    """Argument outside the mathematical domain of the operation."""
