"""
Error types shared by the field representations, kernels and benchmark.
"""


class FieldError(ValueError):
    """Base class for every error raised by this package."""


class DomainError(FieldError):
    """An argument lies outside the domain of a number-theoretic function."""


class FieldBoundError(FieldError):
    """A prime does not fit the bound of the requested representation."""

    def __init__(self, representation, p, bound, detail=''):
        self.representation = representation
        self.p = p
        self.bound = bound
        message = f"p={p} is outside the {representation} bound (max {bound})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class ZeroDivisionFieldError(FieldError, ZeroDivisionError):
    """Division by (or inversion of) the zero element."""


class TableBudgetError(FieldError, MemoryError):
    """Zech tables would exceed the configured memory budget."""


class TableFormatError(FieldError):
    """Serialized Zech tables are malformed or of an unknown version."""


class ConstructionError(FieldError):
    """No irreducible polynomial or primitive element found."""


class KernelPreconditionError(FieldError):
    """A dot-product kernel was called outside its contract."""
