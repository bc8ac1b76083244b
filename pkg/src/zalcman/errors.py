"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An argument violates a documented precondition."""


class CoefficientRangeError(IndexError):
    """A coefficient index falls outside the stored truncation."""


class UnsupportedClassError(TypeError):
    """The operation has no meaning for the given function class."""
