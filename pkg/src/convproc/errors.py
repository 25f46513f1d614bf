class ConvprocError(Exception):
    """Base class for every error raised by the package."""


class MalformedInputError(ConvprocError, ValueError):
    pass


class PreconditionError(ConvprocError):
    """An operation was called outside the domain where it is defined."""


class NoSeparatorError(PreconditionError):
    pass


class SlaterViolatedError(PreconditionError):
    pass


class InconsistentPairError(PreconditionError):
    pass
