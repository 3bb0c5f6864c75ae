"""Exception hierarchy shared by all edmkit modules."""


class EdmError(ValueError):
    """Base class for every error raised by edmkit."""


class InvalidMatrix(EdmError):
    """Input is not square, not finite, not symmetric, or violates a family invariant."""


class TooLarge(EdmError):
    """Requested matrix order exceeds the configured maximum."""


class InvalidPartition(EdmError):
    pass


class NotCentered(EdmError):
    """Matrix rows do not sum to zero within tolerance."""


class NotEdm(EdmError):
    pass


class NotSpherical(EdmError):
    pass


class DegenerateSample(EdmError):
    """Random generator could not produce a well-conditioned instance."""


class InvalidPermutation(EdmError):
    pass
