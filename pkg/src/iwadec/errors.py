"""Exception taxonomy shared by all modules."""


class IwadecError(Exception):
    """Base class for engine errors."""


class MalformedInputError(IwadecError):
    """Input violates a documented precondition or invariant."""


class PreconditionError(IwadecError):
    """A verified precondition failed; carries the name of the identity."""

    def __init__(self, identity: str, message: str = ""):
        self.identity = identity
        super().__init__(message or f"precondition failed: {identity}")


class InternalConsistencyError(IwadecError):
    """A mathematically forced identity failed.  Always aborts, never warns."""


class ResourceLimitError(IwadecError):
    """Computation exceeded a configured cap."""

    def __init__(self, cap: int, message: str = ""):
        self.cap = cap
        super().__init__(message or f"resource cap exceeded (cap={cap})")
