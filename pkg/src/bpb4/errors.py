"""Exception hierarchy shared across the package."""


class BPB4Error(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BPB4Error):
    """Input lies outside the mathematical domain of the operation."""


class PreconditionError(BPB4Error):
    """A stated quantitative precondition is violated."""


class UnsupportedSpaceError(BPB4Error):
    """The requested space family is not handled by this routine."""


class SizeError(BPB4Error):
    """The requested computation is too large to enumerate."""
