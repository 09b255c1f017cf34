"""
Generalised Petersen graphs G(n, k) and generic multigraphs.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import networkx as nx

from petersen_flow.exceptions import GraphDomainError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; loops and parallel edges are separate edge slots."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphDomainError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphDomainError(f"edge ({u}, {v}) has an endpoint out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_parallel_edges(self) -> bool:
        counts = Counter(tuple(sorted(e)) for e in self.edges)
        return any(c > 1 for c in counts.values())

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def is_simple(self) -> bool:
        return not (self.has_loops() or self.has_parallel_edges())

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph

    def is_bridgeless(self) -> bool:
        return not any(True for _ in nx.bridges(self.to_networkx()))

    def girth(self) -> float:
        """Length of the shortest cycle, counting loops as 1 and parallel pairs as 2."""
        if self.has_loops():
            return 1
        if self.has_parallel_edges():
            return 2
        return float(nx.girth(nx.Graph(self.to_networkx())))

    def to_json(self) -> dict[str, Any]:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class GPGraph:
    """The generalised Petersen graph G(n, k).

    Vertices i_1..i_n are labelled 0..n-1 and j_1..j_n are labelled n..2n-1.
    """

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.n <= self.k:
            raise GraphDomainError(f"G(n, k) requires n > k >= 1, got n={self.n}, k={self.k}")

    @cached_property
    def multigraph(self) -> Multigraph:
        n, k = self.n, self.k
        edges: list[Edge] = []
        for p in range(n):
            edges.append((p, n + p))
            edges.append((p, (p + 1) % n))
            edges.append((n + p, n + (p + k) % n))
        return Multigraph(2 * n, tuple(edges))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.multigraph.edges

    @property
    def vertex_count(self) -> int:
        return 2 * self.n

    @property
    def edge_count(self) -> int:
        return 3 * self.n

    @property
    def cyclomatic_number(self) -> int:
        """|E| - |V| + 1, the degree of the flow polynomial."""
        return self.n + 1

    @property
    def layers(self) -> int:
        """Number of transfer-matrix layers n/k."""
        if self.n % self.k:
            raise GraphDomainError(f"k={self.k} does not divide n={self.n}")
        return self.n // self.k

    def has_parallel_edges(self) -> bool:
        return self.n == 2 * self.k

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "k": self.k, "edges": [list(e) for e in self.edges]}


def build(n: int, k: int) -> GPGraph:
    """Build G(n, k) with the deterministic (i_1..i_n, j_1..j_n) labelling."""
    return GPGraph(n, k)


def is_bipartite(g: GPGraph) -> bool:
    """G(n, k) is bipartite iff k is odd and n is even."""
    return g.k % 2 == 1 and g.n % 2 == 0


def two_colourable(g: Multigraph) -> bool:
    """Generic BFS 2-colouring of a multigraph."""
    if g.has_loops():
        return False
    return bool(nx.is_bipartite(nx.Graph(g.to_networkx())))


def graph_from_json(data: str | dict[str, Any]) -> GPGraph | Multigraph:
    """Parse either a {"n", "k"} Petersen record or a {"vertices", "edges"} multigraph."""
    payload = json.loads(data) if isinstance(data, str) else data
    if "n" in payload and "k" in payload:
        graph = build(int(payload["n"]), int(payload["k"]))
        if "edges" in payload and [list(e) for e in graph.edges] != payload["edges"]:
            raise GraphDomainError("edge list does not match the canonical G(n, k) labelling")
        return graph
    edges = tuple((int(u), int(v)) for u, v in payload["edges"])
    return Multigraph(int(payload["vertices"]), edges)
