"""Exception and warning types raised by :mod:`fhtoeplitz`."""


class DomainError(ValueError):
    """A parameter lies outside the admissible strip or interval."""


class GammaPoleError(DomainError):
    """Gamma was evaluated at a nonpositive integer."""


class SingularPointError(DomainError):
    """A symbol was evaluated exactly at one of its singular points."""


class TruncationError(ValueError):
    """The convolution truncation is too small to resolve a coefficient."""


class DivisibilityError(ValueError):
    """The matrix size is not a multiple of the requested block size."""


class ExperimentalOnlyError(RuntimeError):
    """A conjectural prediction was requested without opting in."""


class ConvergenceWarning(RuntimeWarning):
    """An iterative norm estimate stopped before meeting its tolerance."""
