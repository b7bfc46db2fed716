"""Undirected simple graph backed by per-node adjacency sets.

Node ids are dense integers ``0..N-1``. Graphs only grow: nodes and edges can
be added but never removed.
"""

from __future__ import annotations

from typing import Iterator


class Graph:
    """Undirected simple graph (no self-loops, no multi-edges)."""

    __slots__ = ("_adj", "_links")

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._links = 0

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def link_count(self) -> int:
        return self._links

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Graph(N={self.node_count}, L={self.link_count})"

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self._adj):
            raise IndexError(f"node id {i} out of range for graph with {len(self._adj)} nodes")

    def add_node(self) -> int:
        """Append an isolated node and return its id."""
        self._adj.append(set())
        return len(self._adj) - 1

    def add_edge(self, i: int, j: int) -> bool:
        """Insert the link ``{i, j}``.

        Returns False (graph unchanged) for self-loops and links that already
        exist. Out-of-range ids raise ``IndexError``.
        """
        self._check(i)
        self._check(j)
        if i == j or j in self._adj[i]:
            return False
        self._adj[i].add(j)
        self._adj[j].add(i)
        self._links += 1
        return True

    def has_edge(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        return j in self._adj[i]

    def degree(self, i: int) -> int:
        self._check(i)
        return len(self._adj[i])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def neighbors(self, i: int) -> frozenset[int]:
        self._check(i)
        return frozenset(self._adj[i])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each link once as ``(i, j)`` with ``i < j``."""
        for i, nbrs in enumerate(self._adj):
            for j in nbrs:
                if i < j:
                    yield i, j

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def check_invariants(self) -> None:
        """Full scan of the simple-graph invariants; raises AssertionError on violation."""
        total = 0
        for i, nbrs in enumerate(self._adj):
            if i in nbrs:
                raise AssertionError(f"self-loop at node {i}")
            for j in nbrs:
                if not 0 <= j < len(self._adj):
                    raise AssertionError(f"dangling neighbor {j} of node {i}")
                if i not in self._adj[j]:
                    raise AssertionError(f"asymmetric link {i}->{j}")
            total += len(nbrs)
        if total != 2 * self._links:
            raise AssertionError(f"degree sum {total} != 2 * link_count {self._links}")


def new_graph(n: int) -> Graph:
    """Graph with ``n`` isolated nodes."""
    return Graph(n)


def add_edge(g: Graph, i: int, j: int) -> bool:
    return g.add_edge(i, j)


def degree(g: Graph, i: int) -> int:
    return g.degree(i)


def complete_graph(n: int) -> Graph:
    g = Graph(n)
    for i in range(n):
        for j in range(i + 1, n):
            g.add_edge(i, j)
    return g
