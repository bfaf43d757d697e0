"""Exception hierarchy shared by every orbistack module."""


class OrbistackError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(OrbistackError, ZeroDivisionError):
    pass


class MixedFields(OrbistackError):
    """Arithmetic between elements of two different quadratic fields."""


class NotUnimodular(OrbistackError):
    pass


class DimensionMismatch(OrbistackError):
    pass


class NotHyperbolic(OrbistackError):
    pass


class NotCoprime(OrbistackError):
    pass


class ContextMismatch(OrbistackError):
    """Lifted-group elements built over different ε or matrices."""


class MalformedMorphism(OrbistackError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotConnected(OrbistackError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNormal(OrbistackError):
    pass


class NotMorita(OrbistackError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class InternalCheckFailed(OrbistackError):
    """A factorization step did not produce the structure it should have.

    ``witness`` records which check failed and on what data.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ExprSyntaxError(OrbistackError):
    """Parse failure; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
