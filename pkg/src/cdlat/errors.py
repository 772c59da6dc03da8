"""Exception types shared by the package."""


class CdlatError(Exception):
    """Base class for all errors raised by cdlat."""


class PresentationError(CdlatError, ValueError):
    """A pc presentation is structurally invalid."""


class CollectionError(CdlatError):
    """Collection did not terminate within its step budget.

    For the nilpotent and solvable presentations handled here this is
    evidence of an inconsistent presentation.
    """


class GroupMismatchError(CdlatError, ValueError):
    """Operands belong to different groups."""


class EnumerationLimitError(CdlatError):
    """The group is too large for an operation that enumerates elements."""

    def __init__(self, message: str, order: int | None = None, bound: int | None = None):
        super().__init__(message)
        self.order = order
        self.bound = bound


class NotSubgroupError(CdlatError, ValueError):
    """A set of elements is not a subgroup of the ambient group."""


class NotNormalError(CdlatError, ValueError):
    """A subgroup is required to be normal but is not."""


class HypothesisError(CdlatError, ValueError):
    """Input violates the hypotheses an operation relies on."""
