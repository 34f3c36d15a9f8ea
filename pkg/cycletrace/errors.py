"""Exception hierarchy shared by the library, the CLI and the HTTP service."""
from typing import Optional


class CycleTraceError(Exception):
    """Base error. ``exit_code`` is used by the CLI, ``status_code`` by the service."""

    exit_code = 1
    status_code = 400

    @property
    def name(self) -> str:
        return type(self).__name__


# graph-core
class EmptyGraph(CycleTraceError):
    pass


class LoopEdge(CycleTraceError):
    pass


class DuplicateLabel(CycleTraceError):
    pass


class DanglingEndpoint(CycleTraceError):
    pass


class Disconnected(CycleTraceError):
    status_code = 422


class UnknownEdge(CycleTraceError):
    pass


class UnknownVertex(CycleTraceError):
    pass


class VertexLabelCollision(CycleTraceError):
    pass


class DegreeNotTwo(CycleTraceError):
    status_code = 422


class WouldCreateLoop(CycleTraceError):
    status_code = 422


class NotASpanningTree(CycleTraceError):
    pass


# perm-order
class InvalidOrdering(CycleTraceError):
    pass


class EmptyOrdering(CycleTraceError):
    pass


class FixedPointPrecondition(CycleTraceError):
    status_code = 422


# rotation-embed
class DartNotInGraph(CycleTraceError):
    pass


class InvalidRotation(CycleTraceError):
    pass


class NonIntegerGenus(CycleTraceError):
    status_code = 500


class NegativeGenus(CycleTraceError):
    status_code = 500


# genus-search
class BudgetExceeded(CycleTraceError):
    exit_code = 2
    status_code = 507

    def __init__(self, needed: int, budget: int):
        super().__init__(f"search space of {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class InternalVerificationFailure(CycleTraceError):
    status_code = 500


class NotIdentityOrdering(CycleTraceError):
    status_code = 422


class NotSimple(CycleTraceError):
    status_code = 422


# text formats
class ParseError(CycleTraceError):
    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source or "<input>"
        super().__init__(f"{self.source}:{line}:{column}: {message}")


# command front ends
class MissingOption(CycleTraceError):
    pass
