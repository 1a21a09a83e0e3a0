"""
End-to-end clustering and sigma sweeps.

The pipeline merges duplicate points, builds the proximity graph over the
unique locations, computes multiplicity-weighted potentials, builds the
in-tree forest, resolves roots and broadcasts everything back to the
original points.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import re
from typing import List, Optional, Sequence

import numpy as np

from ..config import default_workers
from ..contracts import GraphKind, SweepRow
from ..errors import DataError, InvalidParameter
from ..geometry.delaunay import DedupMap, as_points_array, dedupe_points
from ..geometry.graph import NeighborGraph
from ..intree import ClusterLabeling, InTreeForest, build_forest, resolve_roots
from ..logging_utils import get_logger
from ..potential import (
    Metric,
    PotentialField,
    compute_potentials,
    public_metric,
    validate_sigma,
)
from ..proxgraphs import build_graph
from .metrics import adjusted_rand_index, normalized_mutual_information

logger = get_logger(__name__)

_RANGE_PATTERN = re.compile(r"^\s*([^:]+):([^:]+):(\d+)(log|lin)\s*$")


@dataclass(frozen=True, eq=False)
class ClusterResult:
    """
    Outcome of one pipeline run.

    ``graph``, ``field``, ``forest`` and ``labeling`` are over the unique
    locations in ``dedup``; the properties map them back to original points.
    """

    points: np.ndarray
    dedup: DedupMap
    graph: NeighborGraph
    field: PotentialField
    forest: InTreeForest
    labeling: ClusterLabeling
    graph_kind: GraphKind
    sigma: float
    metric: Metric = Metric.EUCLIDEAN

    @property
    def n(self) -> int:
        return self.dedup.n_original

    @property
    def n_clusters(self) -> int:
        return self.labeling.n_clusters

    @property
    def labels(self) -> np.ndarray:
        return np.asarray(self.labeling.label, dtype=np.int64)[self.dedup.remap]

    @property
    def potentials(self) -> np.ndarray:
        return self.field.values[self.dedup.remap]

    @property
    def roots(self) -> np.ndarray:
        """Original id of the root of every original point."""
        root_of = np.asarray(self.labeling.root_of, dtype=np.int64)
        return self.dedup.representatives[root_of[self.dedup.remap]]

    @property
    def parents(self) -> np.ndarray:
        """
        Parent of every original point, -1 for roots.

        A duplicate hangs off the representative of its location, which in
        turn links to the representative of its unique vertex's parent.
        """
        reps = self.dedup.representatives
        unique_parent = self.forest.as_array()
        mapped = np.where(unique_parent < 0, -1, reps[np.maximum(unique_parent, 0)])
        remap = self.dedup.remap
        is_rep = reps[remap] == np.arange(self.n)
        return np.where(is_rep, mapped[remap], reps[remap])

    def original_forest(self) -> InTreeForest:
        return InTreeForest.from_parents(
            [None if p < 0 else int(p) for p in self.parents]
        )


def _as_graph_kind(graph_kind: GraphKind | str) -> GraphKind:
    if isinstance(graph_kind, GraphKind):
        return graph_kind
    try:
        return GraphKind(kind=graph_kind)
    except ValueError as e:
        raise InvalidParameter(f"invalid graph kind {graph_kind!r}: {e}") from e


def _run(
    points: np.ndarray,
    dedup: DedupMap,
    graph: NeighborGraph,
    sigma: float,
    graph_kind: GraphKind,
    metric: Metric,
    workers: Optional[int],
) -> ClusterResult:
    field = compute_potentials(
        dedup.unique_points,
        sigma,
        metric,
        weights=dedup.multiplicity,
        workers=workers,
    )
    forest = build_forest(graph, field, dedup.unique_points, metric)
    labeling = resolve_roots(forest)
    return ClusterResult(
        points=points,
        dedup=dedup,
        graph=graph,
        field=field,
        forest=forest,
        labeling=labeling,
        graph_kind=graph_kind,
        sigma=field.sigma,
        metric=metric,
    )


def cluster_pipeline(
    points,
    sigma: float,
    graph_kind: GraphKind | str = "delaunay",
    metric: Metric = Metric.EUCLIDEAN,
    *,
    workers: Optional[int] = None,
) -> ClusterResult:
    """
    Cluster a point set.

    Args:
        points: Input points; duplicates are allowed
        sigma: Positive kernel bandwidth
        graph_kind: Proximity graph restricting the descent
        metric: Distance used by the kernel and the nearest-neighbour choice
        workers: Threads for the potential computation

    Returns:
        ClusterResult over the original points

    Raises:
        InvalidParameter: Bad sigma, graph parameters or metric
        DataError: Empty or non-finite input
    """
    sigma = validate_sigma(sigma)
    graph_kind = _as_graph_kind(graph_kind)
    metric = public_metric(metric)
    pts = as_points_array(points)
    dedup = dedupe_points(pts)
    graph = build_graph(graph_kind, dedup.unique_points, metric)
    result = _run(pts, dedup, graph, sigma, graph_kind, metric, workers)
    logger.info(
        "Clustering finished",
        extra={
            "points": result.n,
            "sigma": sigma,
            "graph": graph_kind.label,
            "clusters": result.n_clusters,
        },
    )
    return result


def sweep_sigma(
    points,
    sigmas: Sequence[float],
    graph_kind: GraphKind | str = "delaunay",
    metric: Metric = Metric.EUCLIDEAN,
    truth: Optional[Sequence[int]] = None,
    *,
    workers: Optional[int] = None,
) -> List[SweepRow]:
    """
    Cluster once per sigma and report the cluster counts.

    The graph does not depend on sigma and is built once. Rows follow the
    order of ``sigmas``; with ``truth`` every row also carries ARI and NMI
    against it.
    """
    sigmas = [validate_sigma(s) for s in sigmas]
    if not sigmas:
        raise InvalidParameter("sigma sweep needs at least one sigma")
    graph_kind = _as_graph_kind(graph_kind)
    metric = public_metric(metric)
    pts = as_points_array(points)
    if truth is not None and len(truth) != len(pts):
        raise DataError(f"{len(truth)} truth labels for {len(pts)} points")
    dedup = dedupe_points(pts)
    graph = build_graph(graph_kind, dedup.unique_points, metric)
    workers = workers or default_workers()

    def row(sigma: float) -> SweepRow:
        result = _run(pts, dedup, graph, sigma, graph_kind, metric, workers=1)
        if truth is None:
            return SweepRow(sigma=sigma, cluster_count=result.n_clusters)
        labels = result.labels
        return SweepRow(
            sigma=sigma,
            cluster_count=result.n_clusters,
            ari=adjusted_rand_index(truth, labels),
            nmi=normalized_mutual_information(truth, labels),
        )

    logger.info(
        "Starting sigma sweep",
        extra={"points": len(pts), "sigmas": len(sigmas), "workers": workers},
    )
    if workers > 1 and len(sigmas) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, sigmas))
    else:
        rows = [row(s) for s in sigmas]
    logger.info("Sigma sweep finished", extra={"rows": len(rows)})
    return rows


def parse_sigma_list(text: str) -> List[float]:
    """Parse ``"0.05,5,30000"`` into positive sigmas."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise InvalidParameter(f"invalid sigma list {text!r}")
    return [validate_sigma(p) for p in parts]


def parse_sigma_range(text: str) -> List[float]:
    """
    Expand ``"lo:hi:Nlog"`` (geometric) or ``"lo:hi:Nlin"`` (arithmetic).

    Returns ``N`` ascending sigmas from ``lo`` to ``hi`` inclusive.
    """
    match = _RANGE_PATTERN.match(text)
    if match is None:
        raise InvalidParameter(f"sigma range must look like lo:hi:Nlog, got {text!r}")
    lo, hi = validate_sigma(match.group(1)), validate_sigma(match.group(2))
    count = int(match.group(3))
    if count < 1 or lo > hi:
        raise InvalidParameter(f"sigma range needs N >= 1 and lo <= hi, got {text!r}")
    spacing = np.geomspace if match.group(4) == "log" else np.linspace
    return [float(s) for s in spacing(lo, hi, count)]
