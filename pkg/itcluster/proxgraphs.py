"""
Proximity graphs that can replace the Delaunay graph during descent.

For Euclidean distances the minimum spanning tree and the
relative neighbourhood graph are both subgraphs of the Delaunay graph, so
they are computed from Delaunay edges. Other metrics use direct quadratic
and cubic constructions.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .contracts import GraphKind
from .errors import DegenerateInput, InvalidParameter
from .geometry.delaunay import as_points_array, dedupe_points, delaunay_graph
from .geometry.graph import Edge, NeighborGraph, chain_graph
from .logging_utils import get_logger
from .potential import (
    Metric,
    public_metric,
    ranking_distance,
    ranking_distances,
    wide_extent,
)

logger = get_logger(__name__)

_DELAUNAY_METRICS = (Metric.EUCLIDEAN,)


class UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _distance_matrix(pts: np.ndarray, metric: Metric) -> np.ndarray:
    return np.stack([ranking_distances(pts, i, metric) for i in range(len(pts))])


def _delaunay_candidates(pts: np.ndarray) -> Optional[List[Edge]]:
    """Delaunay edges, the chain for collinear input, None if points repeat."""
    if len(pts) < 2 or dedupe_points(pts).has_duplicates:
        return None
    try:
        return delaunay_graph(pts).edges()
    except DegenerateInput:
        return chain_graph(pts).edges()


def complete_graph(n: int) -> NeighborGraph:
    """Every pair of vertices adjacent."""
    return NeighborGraph.from_edges(n, combinations(range(n), 2))


def knn_graph(
    points,
    k: int,
    metric: Metric = Metric.EUCLIDEAN,
    mutual: bool = False,
) -> NeighborGraph:
    """
    Symmetrised k-nearest-neighbour graph.

    Each point picks its ``k`` nearest other points, distance ties going to
    the smaller index. The directed choices are joined by union, or by
    intersection when ``mutual`` is set.

    Raises:
        InvalidParameter: Unless ``1 <= k < n``
    """
    pts = as_points_array(points)
    n = len(pts)
    if not isinstance(k, (int, np.integer)) or not 1 <= k < n:
        raise InvalidParameter(f"knn needs 1 <= k < n, got k={k} for n={n}")
    metric = public_metric(metric)

    ids = np.arange(n)
    chosen: List[set] = []
    for i in range(n):
        d = ranking_distances(pts, i, metric).copy()
        d[i] = np.inf
        chosen.append(set(np.lexsort((ids, d))[:k].tolist()))

    edges = [
        (i, j)
        for i in range(n)
        for j in chosen[i]
        if not mutual or i in chosen[j]
    ]
    graph = NeighborGraph.from_edges(n, edges)
    logger.debug(
        "k-NN graph built",
        extra={"k": k, "mutual": mutual, "edges": graph.edge_count},
    )
    return graph


def _kruskal(n: int, weighted: Iterable[Tuple[float, int, int]]) -> List[Edge]:
    forest = UnionFind(n)
    tree: List[Edge] = []
    for _, i, j in sorted(weighted):
        if forest.union(i, j):
            tree.append((i, j))
            if len(tree) == n - 1:
                break
    return tree


def emst_graph(points, metric: Metric = Metric.EUCLIDEAN) -> NeighborGraph:
    """
    Minimum spanning tree of the complete graph under ``metric``.

    Equal weights are taken in lexicographic edge order, so the tree is
    unique for a given input.
    """
    pts = as_points_array(points)
    n = len(pts)
    metric = public_metric(metric)
    if n < 2:
        return NeighborGraph.empty(n)

    candidates = _delaunay_candidates(pts) if metric in _DELAUNAY_METRICS else None
    if candidates is None:
        dist = _distance_matrix(pts, metric)
        weighted = ((dist[i, j], i, j) for i, j in combinations(range(n), 2))
    else:
        wide = wide_extent(pts)
        weighted = [
            (ranking_distance(metric, pts[i], pts[j], wide=wide), i, j)
            for i, j in candidates
        ]
    return NeighborGraph.from_edges(n, _kruskal(n, weighted))


def _has_witness(dist_i: np.ndarray, dist_j: np.ndarray, dij: float) -> bool:
    return bool((np.maximum(dist_i, dist_j) < dij).any())


def rng_graph(points, metric: Metric = Metric.EUCLIDEAN) -> NeighborGraph:
    """
    Relative neighbourhood graph.

    ``(i, j)`` is an edge unless some third point is strictly closer to both
    endpoints than they are to each other.
    """
    pts = as_points_array(points)
    n = len(pts)
    metric = public_metric(metric)
    if n < 2:
        return NeighborGraph.empty(n)

    candidates = _delaunay_candidates(pts) if metric in _DELAUNAY_METRICS else None
    if candidates is None:
        candidates = list(combinations(range(n), 2))
    rows = {}

    def row(i: int) -> np.ndarray:
        if i not in rows:
            rows[i] = ranking_distances(pts, i, metric)
        return rows[i]

    edges = [
        (i, j)
        for i, j in candidates
        if not _has_witness(row(i), row(j), row(i)[j])
    ]
    return NeighborGraph.from_edges(n, edges)


def build_graph(
    kind: GraphKind | str,
    points,
    metric: Metric = Metric.EUCLIDEAN,
) -> NeighborGraph:
    """
    Build the proximity graph named by ``kind``.

    The Delaunay graph falls back to the chain along the dominant axis when
    the points cannot be triangulated (fewer than three, or collinear).
    """
    if isinstance(kind, str):
        kind = GraphKind(kind=kind)
    pts = as_points_array(points)
    metric = public_metric(metric)

    if kind.kind == "delaunay":
        try:
            graph = delaunay_graph(pts)
        except DegenerateInput as e:
            logger.warning(
                "Delaunay graph unavailable, using chain graph",
                extra={"reason": str(e)},
            )
            graph = chain_graph(pts)
    elif kind.kind == "knn":
        graph = knn_graph(pts, kind.k, metric, mutual=kind.mutual)
    elif kind.kind == "mst":
        graph = emst_graph(pts, metric)
    elif kind.kind == "rng":
        graph = rng_graph(pts, metric)
    elif kind.kind == "complete":
        graph = complete_graph(len(pts))
    else:  # pragma: no cover - GraphKind restricts the names
        raise InvalidParameter(f"unknown graph kind {kind.kind!r}")

    logger.info(
        "Proximity graph built",
        extra={"kind": kind.label, "points": len(pts), "edges": graph.edge_count},
    )
    return graph
