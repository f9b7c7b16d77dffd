"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a structural invariant (shape, hermiticity, trace, ...)."""


class DomainError(ValueError):
    """A scalar function was applied outside its domain (e.g. log of a singular state)."""


class SupportMismatchError(ValueError):
    """States or distributions that must share support do not."""


class PrivacyViolationError(ValueError):
    """A mechanism fails the privacy audit it declares."""


class ExistenceError(ValueError):
    """Requested frame parameters fall outside the known existence region."""
