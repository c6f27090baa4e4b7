"""Exception types raised by :mod:`supauli`."""


class ResourceLimitError(RuntimeError):
    """A dense operation would exceed the configured size cap."""


class UnsupportedDimensionError(ValueError):
    """The matrix dimension is not a power of two."""


class OutOfSpanError(ValueError):
    """The operator has no expansion in the traceless generator basis."""


class SuConditionError(ValueError):
    """A matrix violates one of the Hermitian-traceless conditions.

    ``failed`` lists the roman-numeral labels of the violated conditions:
    ``"i"`` (real diagonal), ``"ii"`` (traceless), ``"iii"`` (upper
    triangle is the conjugate of the lower triangle).
    """

    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)
