"""Exception hierarchy shared across the package."""


class TripackError(Exception):
    """Base class for all package errors."""


class ParseError(TripackError, ValueError):
    """Malformed edge-list or graph6 input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(TripackError, ValueError):
    """A caller violated an operation's precondition."""


class PreconditionError(ContractError):
    """Input graph lacks a property the operation requires (e.g. K4-freeness)."""


class PartitionError(ContractError):
    """Vertex sets do not form a partition of the graph's vertex set."""


class SizeError(TripackError):
    """Instance exceeds the desk-scale budget of an exact routine."""


class InternalError(TripackError, AssertionError):
    """An invariant guaranteed by the underlying proof failed; indicates a bug."""


class TraceError(TripackError):
    """A symmetrization trace failed independent verification."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
