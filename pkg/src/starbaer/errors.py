"""Exception hierarchy shared by every module."""


class StarRingError(Exception):
    """Base class for all library errors."""


class SpecError(StarRingError):
    """A ring-spec document is malformed or violates a validation rule."""


class LimitError(StarRingError):
    """An enumeration would exceed a configured limit."""

    def __init__(self, message, reached=None):
        super().__init__(message)
        self.reached = reached


class AxiomError(StarRingError):
    """Tables do not define a ring with involution."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoUnityError(StarRingError):
    """The ring has no multiplicative identity."""


class PreconditionError(StarRingError):
    """An operation was called on a ring outside its stated hypotheses."""


class LatticeError(StarRingError):
    """A supremum or infimum does not exist in the projection poset."""


class CheckFailure(StarRingError):
    """An asserted identity failed on a concrete instance.

    ``witness`` carries the data needed to reproduce the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness if witness is not None else {}
