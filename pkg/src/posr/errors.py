"""Exception types shared across the package."""


class PosrError(Exception):
    """Base class for all errors raised by this package."""


class EmptyGeneratorList(PosrError):
    pass


class ClosureCapExceeded(PosrError):
    pass


class InvalidParameter(PosrError):
    pass


class UnknownGenerator(PosrError):
    pass


class NotTwoGenerated(PosrError):
    pass


class IndexOutOfRange(PosrError):
    pass


class BudgetExceeded(PosrError):
    pass


class TooLarge(PosrError):
    pass


class OutOfRange(PosrError):
    pass


class NoCandidate(PosrError):
    pass


class PreconditionFailed(PosrError):
    pass


class UnsupportedGroup(PosrError):
    pass


class UnsupportedFormat(PosrError):
    pass
