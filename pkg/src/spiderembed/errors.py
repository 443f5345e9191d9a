"""Exception types shared across the package."""


class SpiderError(Exception):
    """Base class for all package-specific errors."""


class GraphParseError(SpiderError):
    """Malformed edge-list input; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(SpiderError):
    """An operation was called outside its documented preconditions."""


class InfeasibleError(PreconditionError):
    """The requested generator parameters admit no graph."""


class BudgetExhaustedError(SpiderError):
    """A search ran out of nodes before reaching an exact verdict.

    Deliberately distinct from a negative answer: callers must never
    treat an exhausted search as "does not exist".
    """


class ProofDiscrepancyError(SpiderError):
    """A constructive step's claimed witness or inequality failed on a
    concrete instance.

    Carries the instance and the trace so the failure can be audited and
    replayed.  Raised instead of ever returning an invalid certificate.
    """

    def __init__(self, message: str, graph=None, shape=None, trace=None):
        super().__init__(message)
        self.graph = graph
        self.shape = shape
        self.trace = trace
