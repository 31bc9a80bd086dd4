"""Node-weighted undirected graphs and grow-only component tracking."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "GraphError",
    "DisconnectedGraph",
    "NonPositiveCost",
    "MalformedEdge",
    "NodeInC",
    "WeightedGraph",
    "ComponentIndex",
    "build_graph",
    "max_degree",
    "induced_components",
]


class GraphError(ValueError):
    """Base class for invalid problem instances."""


class DisconnectedGraph(GraphError):
    pass


class NonPositiveCost(GraphError):
    pass


class MalformedEdge(GraphError):
    pass


class NodeInC(ValueError):
    """Raised when a marginal is requested for a node already selected."""


def as_cost(value) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to an exact cost.

    Floats are refused: costs must stay exact end to end.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"cost must be exact (int, Fraction or str), got {value!r}")
    return Fraction(value)


class WeightedGraph:
    """Immutable simple undirected graph with positive rational node costs.

    Nodes are the dense integers ``0 .. n-1``.  Instances are built through
    :func:`build_graph`, which validates every invariant; constructing one
    directly skips validation.
    """

    __slots__ = ("n", "adjacency", "costs", "masks")

    def __init__(self, adjacency: Sequence[Sequence[int]], costs: Sequence[Fraction]):
        self.n = len(costs)
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self.costs = tuple(costs)
        # neighbourhoods as int bitsets, used by the from-scratch evaluators
        self.masks = tuple(sum(1 << v for v in nbrs) for nbrs in self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def cost(self, v: int) -> Fraction:
        return self.costs[v]

    def total_cost(self, nodes: Iterable[int]) -> Fraction:
        return sum((self.costs[v] for v in nodes), Fraction(0))

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.adjacency[a] if a < b]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.costs == other.costs

    def __hash__(self) -> int:
        return hash((self.adjacency, self.costs))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.edge_count})"


def build_graph(edges: Iterable[tuple[int, int]], costs: Sequence) -> WeightedGraph:
    """Validate ``edges`` and ``costs`` and return a :class:`WeightedGraph`.

    The node count is ``len(costs)``.

    Raises
    ------
    MalformedEdge
        Out-of-range endpoint, self-loop or duplicate edge.
    NonPositiveCost
        Some cost is ``<= 0``.
    DisconnectedGraph
        The graph has more than one connected component.
    """
    exact = [as_cost(c) for c in costs]
    n = len(exact)
    if n == 0:
        raise GraphError("graph must have at least one node")
    for v, c in enumerate(exact):
        if c <= 0:
            raise NonPositiveCost(f"node {v} has non-positive cost {c}")

    adjacency: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise MalformedEdge(f"edge ({a}, {b}) has an endpoint outside 0..{n - 1}")
        if a == b:
            raise MalformedEdge(f"self-loop at node {a}")
        if b in adjacency[a]:
            raise MalformedEdge(f"duplicate edge ({a}, {b})")
        adjacency[a].add(b)
        adjacency[b].add(a)

    graph = WeightedGraph(adjacency, exact)
    if len(induced_components(graph, range(n))) != 1:
        raise DisconnectedGraph("graph is not connected")
    return graph


def max_degree(graph: WeightedGraph) -> int:
    return max(graph.degree(v) for v in range(graph.n))


def induced_components(graph: WeightedGraph, nodes: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the induced subgraph ``G[nodes]`` by BFS."""
    members = set(nodes)
    seen: set[int] = set()
    components = []
    for start in sorted(members):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        comp = {start}
        while queue:
            v = queue.popleft()
            for w in graph.adjacency[v]:
                if w in members and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        components.append(frozenset(comp))
    return components


class ComponentIndex:
    """Disjoint-set forest over the selected nodes of a graph.

    Only supports insertion, matching the greedy loop which never removes a
    node.  ``count`` is the number of components of ``G[C]``.
    """

    __slots__ = ("graph", "parent", "rank", "selected", "count")

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self.parent = list(range(graph.n))
        self.rank = [0] * graph.n
        self.selected = [False] * graph.n
        self.count = 0

    def copy(self) -> ComponentIndex:
        other = ComponentIndex.__new__(ComponentIndex)
        other.graph = self.graph
        other.parent = self.parent[:]
        other.rank = self.rank[:]
        other.selected = self.selected[:]
        other.count = self.count
        return other

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def component_of(self, v: int) -> int:
        if not self.selected[v]:
            raise ValueError(f"node {v} is not selected")
        return self.find(v)

    def component_neighbors(self, u: int) -> set[int]:
        """Ids of the components of ``G[C]`` holding a neighbour of ``u``."""
        if self.selected[u]:
            raise NodeInC(f"node {u} is already selected")
        return {self.find(w) for w in self.graph.adjacency[u] if self.selected[w]}

    def add_node(self, u: int) -> int:
        """Insert ``u`` and merge the components it touches.

        Returns the change in component count, ``1 - |NC(u)|``.
        """
        roots = self.component_neighbors(u)
        self.selected[u] = True
        for r in roots:
            self._union(u, r)
        delta = 1 - len(roots)
        self.count += delta
        return delta

    def _union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
