"""Undirected neighbour graphs over vertex ids and their text/JSON exports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Tuple

import numpy as np

from ..errors import DataError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class NeighborGraph:
    """Symmetric adjacency lists; ``adjacency[i]`` is sorted and self-loop free."""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "NeighborGraph":
        """Build from undirected edges; duplicates collapse, self-loops are refused."""
        neighbor_sets: List[set] = [set() for _ in range(n)]
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            neighbor_sets[i].add(j)
            neighbor_sets[j].add(i)
        return cls(n=n, adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets))

    @classmethod
    def empty(cls, n: int) -> "NeighborGraph":
        return cls(n=n, adjacency=tuple(() for _ in range(n)))

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def edges(self) -> List[Edge]:
        """Edges as ``(i, j)`` with ``i < j``, sorted lexicographically."""
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges())

    def is_subgraph_of(self, other: "NeighborGraph") -> bool:
        return self.n == other.n and self.edge_set() <= other.edge_set()

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for j in self.adjacency[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n


def chain_graph(points: np.ndarray) -> NeighborGraph:
    """
    Path through the points ordered along their dominant axis.

    This is the graph used when a triangulation does not exist (fewer than
    three distinct points, or all of them collinear); for collinear points it
    is their Euclidean minimum spanning tree.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    if n < 2:
        return NeighborGraph.empty(n)
    extent = np.ptp(pts, axis=0)
    axis = 0 if extent[0] >= extent[1] else 1
    order = np.argsort(pts[:, axis], kind="stable")
    return NeighborGraph.from_edges(n, zip(order[:-1], order[1:]))


def edge_list_text(graph: NeighborGraph) -> str:
    """One ``i j`` pair per line, ``i < j``, sorted lexicographically."""
    return "".join(f"{i} {j}\n" for i, j in graph.edges())


def parse_edge_list(text: str, n: int | None = None) -> NeighborGraph:
    """
    Parse an edge list written by :func:`edge_list_text`.

    Args:
        text: Edge list, blank lines and ``#`` comments ignored
        n: Vertex count; defaults to one past the largest id

    Returns:
        NeighborGraph over ``n`` vertices
    """
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DataError(f"line {lineno}: expected 'i j', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DataError(
                f"line {lineno}: non-integer vertex id in {raw!r}"
            ) from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return NeighborGraph.from_edges(n, edges)
    except ValueError as e:
        raise DataError(str(e)) from e


def graph_to_json(points: np.ndarray, graph: NeighborGraph) -> Dict[str, Any]:
    """JSON-ready payload with ``points`` and ``edges`` arrays."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return {
        "points": [[float(x), float(y)] for x, y in pts],
        "edges": [[i, j] for i, j in graph.edges()],
    }
