"""Exception types shared across the package."""


class RittError(Exception):
    """Base class for every error raised by this package."""


class BoundExceeded(RittError):
    """A search or enumeration hit its configured cap.

    This never means "no"; it means the question was not settled.
    """


class InvalidTuple(RittError):
    pass


class NotCertified(RittError):
    """Membership in R_2 could not be certified inside the coefficient field."""


class ConstraintError(RittError, ValueError):
    pass
