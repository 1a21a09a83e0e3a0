"""
Potential field over a point set and the total order it induces.

Each point carries the potential ``P_i = -sum_j exp(-d(i, j)**2 / sigma)``
summed over every point, itself included. Lower potential marks denser
surroundings. Points with equal potential are ordered by index, which turns
the potentials into a strict total order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
import math
from typing import List, Optional, Sequence

import numpy as np

from .config import default_workers
from .errors import DataError, InvalidParameter
from .geometry.delaunay import as_points_array
from .logging_utils import get_logger

logger = get_logger(__name__)

_BLOCK_ROWS = 256

# Coordinates below this magnitude keep every squared gap finite.
_SQUARE_SAFE = 2.0**510


class Metric(str, Enum):
    EUCLIDEAN = "euclidean"
    SQUARED_EUCLIDEAN = "sqeuclidean"  # ranking only
    MANHATTAN = "manhattan"


PUBLIC_METRICS = (Metric.EUCLIDEAN, Metric.MANHATTAN)


def public_metric(metric) -> Metric:
    """
    Coerce ``metric`` to a Metric usable inside the kernel.

    Raises:
        InvalidParameter: For unknown names and for ``sqeuclidean``, which
            would square the distance twice inside the kernel
    """
    try:
        metric = Metric(metric)
    except ValueError:
        raise InvalidParameter(f"unknown metric {metric!r}") from None
    if metric not in PUBLIC_METRICS:
        names = ", ".join(m.value for m in PUBLIC_METRICS)
        raise InvalidParameter(f"metric must be one of {names}, got {metric.value}")
    return metric


def wide_extent(points: np.ndarray) -> bool:
    """True when squared coordinate gaps of ``points`` could overflow."""
    return len(points) > 0 and float(np.abs(points).max()) >= _SQUARE_SAFE


def distance(metric: Metric, p, q) -> float:
    """Distance between two points under ``metric``."""
    px, py = (p.x, p.y) if hasattr(p, "x") else (p[0], p[1])
    qx, qy = (q.x, q.y) if hasattr(q, "x") else (q[0], q[1])
    dx = float(px) - float(qx)
    dy = float(py) - float(qy)
    metric = Metric(metric)
    if metric is Metric.MANHATTAN:
        return abs(dx) + abs(dy)
    sq = dx * dx + dy * dy
    if metric is Metric.SQUARED_EUCLIDEAN:
        return sq
    return math.sqrt(sq)


def distances_from(points: np.ndarray, i: int, metric: Metric) -> np.ndarray:
    """Vectorised ``distance(metric, points[i], points[j])`` for every ``j``."""
    diff = points - points[i]
    dx, dy = diff[:, 0], diff[:, 1]
    metric = Metric(metric)
    if metric is Metric.MANHATTAN:
        return np.abs(dx) + np.abs(dy)
    sq = dx * dx + dy * dy
    if metric is Metric.SQUARED_EUCLIDEAN:
        return sq
    return np.sqrt(sq)


def ranking_distances(points: np.ndarray, i: int, metric: Metric) -> np.ndarray:
    """
    Monotone stand-in for ``distances_from`` used when only order matters.

    Euclidean distances are ranked by their squares, which skips the rounding
    of the square root and so never merges two distinct squared distances.
    Point sets wide enough for the squares to overflow rank by ``hypot``.
    """
    if Metric(metric) is Metric.EUCLIDEAN:
        if wide_extent(points):
            diff = points - points[i]
            return np.hypot(diff[:, 0], diff[:, 1])
        return distances_from(points, i, Metric.SQUARED_EUCLIDEAN)
    return distances_from(points, i, metric)


def _squared_distances_from(points: np.ndarray, i: int, metric: Metric) -> np.ndarray:
    # Overflow to inf is fine here: exp(-inf / sigma) is 0.
    with np.errstate(over="ignore"):
        if Metric(metric) is Metric.EUCLIDEAN:
            return distances_from(points, i, Metric.SQUARED_EUCLIDEAN)
        d = distances_from(points, i, metric)
        return d * d


@dataclass(frozen=True, eq=False)
class PotentialField:
    """Per-vertex potentials and the parameters that produced them."""

    sigma: float
    values: np.ndarray
    metric: Metric = Metric.EUCLIDEAN
    include_self: bool = True

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return self.n

    def order(self) -> np.ndarray:
        """Vertex ids from lowest to highest under the tie-broken order."""
        return np.lexsort((np.arange(self.n), self.values))


def validate_sigma(sigma: float) -> float:
    try:
        sigma = float(sigma)
    except (TypeError, ValueError):
        raise InvalidParameter(f"sigma must be a number, got {sigma!r}") from None
    if not math.isfinite(sigma) or sigma <= 0.0:
        raise InvalidParameter(f"sigma must be a positive finite number, got {sigma}")
    return sigma


def compute_potentials(
    points,
    sigma: float,
    metric: Metric = Metric.EUCLIDEAN,
    *,
    weights: Optional[Sequence[int]] = None,
    include_self: bool = True,
    workers: Optional[int] = None,
) -> PotentialField:
    """
    Compute the potential of every point.

    Args:
        points: Points as accepted by ``as_points_array``
        sigma: Positive kernel bandwidth (squared data units)
        metric: Distance used inside the Gaussian kernel
        weights: Optional multiplicity per point; a point of weight ``m``
            stands for ``m`` coincident originals
        include_self: Keep the ``j = i`` term (a constant -1 per original)
        workers: Threads for the outer loop; defaults to ``ITC_WORKERS``

    Returns:
        PotentialField with one value per point

    Raises:
        InvalidParameter: If sigma is not a positive finite number or the
            metric is not one of ``PUBLIC_METRICS``
    """
    sigma = validate_sigma(sigma)
    metric = public_metric(metric)
    pts = as_points_array(points)
    n = len(pts)
    if n == 0:
        raise DataError("cannot compute potentials of an empty point set")
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (n,) or (w < 1).any():
        raise InvalidParameter("weights must be one positive count per point")
    workers = workers or default_workers()

    def block(start: int) -> List[float]:
        out = []
        for i in range(start, min(start + _BLOCK_ROWS, n)):
            terms = np.exp(-(_squared_distances_from(pts, i, metric) / sigma)) * w
            if not include_self:
                terms[i] -= 1.0  # one original's own exp(0)
            # fsum is exactly rounded, so the result does not depend on the
            # summation order.
            out.append(-math.fsum(terms.tolist()))
        return out

    starts = range(0, n, _BLOCK_ROWS)
    logger.info(
        "Computing potentials",
        extra={
            "points": n,
            "sigma": sigma,
            "metric": metric.value,
            "workers": workers,
        },
    )
    if workers > 1 and n > _BLOCK_ROWS:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(block, starts))
    else:
        blocks = [block(s) for s in starts]

    values = np.array([v for b in blocks for v in b], dtype=float)
    values.setflags(write=False)
    return PotentialField(
        sigma=sigma, values=values, metric=metric, include_self=include_self
    )


def strictly_lower(field: PotentialField, k: int, i: int) -> bool:
    """True iff ``k`` precedes ``i``: lower potential, or equal and smaller id."""
    pk = field.values[k]
    pi = field.values[i]
    return bool(pk < pi or (pk == pi and k < i))


def ranking_distance(metric: Metric, p, q, *, wide: bool = False) -> float:
    """
    Scalar counterpart of :func:`ranking_distances`.

    ``wide`` must be ``wide_extent`` of the whole point set so that every
    pair of one set is ranked on the same scale.
    """
    if Metric(metric) is Metric.EUCLIDEAN:
        if wide:
            return math.hypot(float(p[0]) - float(q[0]), float(p[1]) - float(q[1]))
        return distance(Metric.SQUARED_EUCLIDEAN, p, q)
    return distance(metric, p, q)
