"""
In-tree forest construction and root resolution.

Every point descends to the nearest graph neighbour that comes before it in
the potential order. Points with no such neighbour become roots, and each
root heads one in-tree (one cluster).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DataError, ForestInvariantError
from .geometry.delaunay import as_points_array
from .geometry.graph import NeighborGraph
from .logging_utils import get_logger
from .potential import (
    Metric,
    PotentialField,
    public_metric,
    ranking_distance,
    strictly_lower,
    wide_extent,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class InTreeForest:
    """``parent[i]`` is the directed neighbour of ``i``, or None for a root."""

    n: int
    parent: Tuple[Optional[int], ...]

    @classmethod
    def from_parents(cls, parent: Sequence[Optional[int]]) -> "InTreeForest":
        return cls(
            n=len(parent),
            parent=tuple(None if p is None else int(p) for p in parent),
        )

    @property
    def roots(self) -> List[int]:
        return [i for i, p in enumerate(self.parent) if p is None]

    @property
    def edge_count(self) -> int:
        return sum(p is not None for p in self.parent)

    def edges(self) -> List[Tuple[int, int]]:
        """Directed ``(child, parent)`` pairs in child order."""
        return [(i, p) for i, p in enumerate(self.parent) if p is not None]

    def as_array(self) -> np.ndarray:
        """Parents as integers, -1 for roots."""
        return np.array([-1 if p is None else p for p in self.parent], dtype=np.int64)


@dataclass(frozen=True)
class ClusterLabeling:
    """Root of every vertex and a dense label numbered by ascending root id."""

    root_of: Tuple[int, ...]
    label: Tuple[int, ...]
    n_clusters: int

    @property
    def roots(self) -> List[int]:
        return sorted(set(self.root_of))


def _check_sizes(graph: NeighborGraph, field: PotentialField) -> None:
    if graph.n != field.n:
        raise DataError(
            f"graph has {graph.n} vertices but the potential field has {field.n}"
        )


def lower_neighbor_set(
    i: int, graph: NeighborGraph, field: PotentialField
) -> FrozenSet[int]:
    """Graph neighbours of ``i`` that precede it in the potential order."""
    return frozenset(k for k in graph.neighbors(i) if strictly_lower(field, k, i))


def _nearest(
    i: int, candidates, coords: np.ndarray, metric: Metric, wide: bool
) -> Optional[int]:
    best = None
    best_key = None
    for k in candidates:
        key = (ranking_distance(metric, coords[i], coords[k], wide=wide), k)
        if best_key is None or key < best_key:
            best, best_key = k, key
    return best


def directed_neighbor(
    i: int,
    graph: NeighborGraph,
    field: PotentialField,
    points,
    metric: Metric = Metric.EUCLIDEAN,
) -> Optional[int]:
    """
    Nearest lower neighbour of ``i``, distance ties going to the smaller id.

    Returns:
        Vertex id, or None when ``i`` has no lower neighbour (a root)
    """
    coords = as_points_array(points)
    metric = public_metric(metric)
    wide = wide_extent(coords)
    return _nearest(i, lower_neighbor_set(i, graph, field), coords, metric, wide)


def build_forest(
    graph: NeighborGraph,
    field: PotentialField,
    points,
    metric: Metric = Metric.EUCLIDEAN,
) -> InTreeForest:
    """
    Link every vertex to its directed neighbour.

    Args:
        graph: Neighbourhood that restricts each vertex's choice
        field: Potentials defining the descent order
        points: Vertex coordinates
        metric: Distance used to pick the nearest lower neighbour

    Returns:
        InTreeForest; acyclic because every link descends in a strict order
    """
    _check_sizes(graph, field)
    coords = as_points_array(points)
    if len(coords) != graph.n:
        raise DataError(f"graph has {graph.n} vertices but {len(coords)} points")
    metric = public_metric(metric)
    wide = wide_extent(coords)

    parent = [
        _nearest(i, lower_neighbor_set(i, graph, field), coords, metric, wide)
        for i in range(graph.n)
    ]
    forest = InTreeForest.from_parents(parent)
    logger.info(
        "In-tree forest built",
        extra={"points": forest.n, "edges": forest.edge_count},
    )
    return forest


def resolve_roots(forest: InTreeForest) -> ClusterLabeling:
    """
    Follow parent links to each vertex's root and number the clusters.

    Paths are memoised, so every vertex is walked once.

    Raises:
        ForestInvariantError: If the parent links contain a cycle
    """
    n = forest.n
    root_of = [-1] * n
    on_path = [False] * n
    for start in range(n):
        if root_of[start] >= 0:
            continue
        path = []
        u = start
        while True:
            if root_of[u] >= 0:
                root = root_of[u]
                break
            if on_path[u]:
                raise ForestInvariantError(f"parent links form a cycle through {u}")
            on_path[u] = True
            path.append(u)
            p = forest.parent[u]
            if p is None:
                root = u
                break
            u = p
        for w in path:
            root_of[w] = root
            on_path[w] = False

    roots = sorted(set(root_of))
    dense = {r: c for c, r in enumerate(roots)}
    return ClusterLabeling(
        root_of=tuple(root_of),
        label=tuple(dense[r] for r in root_of),
        n_clusters=len(roots),
    )


def local_minima(graph: NeighborGraph, field: PotentialField) -> List[int]:
    """Vertices that precede all of their graph neighbours."""
    _check_sizes(graph, field)
    return [
        i
        for i in range(graph.n)
        if all(strictly_lower(field, i, k) for k in graph.neighbors(i))
    ]


def forest_to_csv_text(forest: InTreeForest) -> str:
    """``index,parent`` rows; the parent cell is empty for roots."""
    lines = ["index,parent"]
    lines += [f"{i},{'' if p is None else p}" for i, p in enumerate(forest.parent)]
    return "\n".join(lines) + "\n"


def forest_to_json(
    points, forest: InTreeForest, field: PotentialField | None = None
) -> Dict[str, Any]:
    """JSON-ready payload with points, parents (null for roots) and potentials."""
    coords = as_points_array(points)
    payload: Dict[str, Any] = {
        "points": [[float(x), float(y)] for x, y in coords],
        "parent": list(forest.parent),
        "roots": forest.roots,
    }
    if field is not None:
        payload["potential"] = [float(v) for v in field.values]
        payload["sigma"] = field.sigma
    return payload
