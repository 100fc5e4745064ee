"""Exception hierarchy shared by all workbench modules."""


class WorkbenchError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WorkbenchError):
    """Malformed input document (bad JSON, wrong schema, wrong types)."""


class InvariantViolation(WorkbenchError):
    """A structural invariant of a quiver or algebra does not hold."""


class UnknownVertex(WorkbenchError):
    """A vertex label was referenced that the quiver does not declare."""


class SizeLimit(WorkbenchError):
    """Input exceeds a configured size cap (canonicalizer guard)."""


class NotInClass(WorkbenchError):
    """Quiver is not a member of the recognized annulus mutation class.

    ``reason`` is one of: NoNonOrientedCycle, MultipleNonOrientedCycles,
    BadCycleIncidence, BranchNotTypeA, BadApexDegree.
    """

    def __init__(self, reason, message=""):
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)


class InvalidParameters(WorkbenchError):
    """Parameter quadruple with an empty orientation side."""


class NonTermination(WorkbenchError):
    """Reduction exceeded its step budget; signals an implementation bug."""


class InfiniteDimensional(WorkbenchError):
    """Path counting found a relation-free directed cycle."""


class ConflictingConstraints(WorkbenchError):
    """Sign propagation hit a contradiction (non-gentle input slipped in)."""


class PairingFailure(WorkbenchError):
    """Thread pairing found zero or several candidates where one must exist."""


class CapExceeded(WorkbenchError):
    """Census grew past the configured member cap."""


class AssertionFailure(WorkbenchError):
    """A theorem check failed; carries a minimal counterexample report."""

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)
