class QwalkError(Exception):
    """Base class for errors raised by qwalk operations."""


class NotNormalized(QwalkError, ValueError):
    pass


class NotUnitary(QwalkError, ValueError):
    pass


class TruncationViolation(QwalkError, ValueError):
    pass


class EmptyCounts(QwalkError, ValueError):
    pass


class NonPositiveData(QwalkError, ValueError):
    pass


class JobFailed(QwalkError, RuntimeError):
    pass
