"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Base class for malformed input and violated preconditions."""


class CycleFound(GraphError):
    def __init__(self, cycle):
        # cycle: list of (edge_id, tail, head) in traversal order
        self.cycle = list(cycle)
        path = " -> ".join(str(e[1]) for e in self.cycle)
        if self.cycle:
            path += f" -> {self.cycle[0][1]}"
        super().__init__(f"directed cycle: {path}")


class MultipleSources(GraphError):
    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"more than one indegree-0 vertex: {self.vertices}")


class MultipleSinks(GraphError):
    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"more than one outdegree-0 vertex: {self.vertices}")


class TerminalMismatch(GraphError):
    pass


class BudgetExhausted(GraphError):
    pass


class PreconditionViolated(GraphError):
    pass


class EdgeNotFound(GraphError, KeyError):
    pass


class VertexNotFound(GraphError, KeyError):
    pass


class NotInvertibleOutsideTdag(GraphError):
    pass


class CyclicInput(GraphError):
    pass


class MalformedQuery(GraphError):
    pass


class TooLarge(GraphError):
    pass


class HostNotTwoTerminal(GraphError):
    pass


class InvalidK(GraphError):
    pass


class EngineDisagreement(RuntimeError):
    """Two independent engines returned different answers for the same question."""
