"""Exception hierarchy.

Every domain failure derives from :class:`QTorusError`; the CLI maps those
to exit status 1.
"""


class QTorusError(Exception):
    pass


class ConfigurationError(QTorusError, ValueError):
    """Bad coefficient-field or config-file settings."""


class InvalidCommutationMatrix(QTorusError, ValueError):
    pass


class DimensionMismatch(QTorusError, ValueError):
    pass


class MismatchedRing(QTorusError, ValueError):
    """Operands live over different commutation data or coefficient fields."""


class NotInvertible(QTorusError, ArithmeticError):
    pass


class NotCentral(QTorusError, ValueError):
    pass


class InternalConsistencyError(QTorusError, RuntimeError):
    """A cross-check that the theory guarantees has failed."""


class OracleTooLarge(QTorusError):
    pass
