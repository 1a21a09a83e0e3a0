"""
Delaunay triangulation of a 2D point set by incremental insertion.

Points are inserted in input order (Bowyer-Watson). The triangulation is kept
closed by "ghost" triangles that join every convex-hull edge to a vertex at
infinity, so points outside the current hull need no bounding super-triangle.
All decisions go through the exact predicates, and a cavity only absorbs
triangles whose circumcircle contains the new point strictly. A point that is
cocircular with an existing triangle therefore behaves as if it were moved
infinitesimally outward, the later (higher) index yielding to the earlier
ones; this fixes the diagonal chosen for cocircular sets and makes the output
a function of the input order alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import DataError, DegenerateInput
from ..logging_utils import get_logger
from .graph import NeighborGraph
from .predicates import incircle_sign, orient2d_sign

logger = get_logger(__name__)

GHOST = -1
BOUNDARY = -1


def as_points_array(points) -> np.ndarray:
    """
    Convert points to a read-only ``(n, 2)`` float array.

    Args:
        points: Sequence of Point2, of ``(x, y)`` pairs, or an ``(n, 2)`` array

    Raises:
        DataError: If the shape is wrong or any coordinate is not finite
    """
    if isinstance(points, np.ndarray):
        arr = np.array(points, dtype=float)
    else:
        rows = [
            (p.x, p.y) if hasattr(p, "x") and hasattr(p, "y") else tuple(p)
            for p in points
        ]
        arr = np.array(rows, dtype=float)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DataError(f"points must have shape (n, 2), got {arr.shape}")
    bad = ~np.isfinite(arr).all(axis=1)
    if bad.any():
        raise DataError(f"non-finite coordinate at point {int(np.argmax(bad))}")
    # -0.0 + 0.0 is +0.0, so equal locations share one bit pattern.
    arr = arr + 0.0
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DedupMap:
    """Exact-duplicate merge of a point list.

    ``remap[i]`` is the unique index of original point ``i``;
    ``representatives[u]`` is the smallest original index merged into ``u``.
    """

    unique_points: np.ndarray
    remap: np.ndarray
    representatives: np.ndarray
    multiplicity: np.ndarray

    @property
    def n_original(self) -> int:
        return len(self.remap)

    @property
    def n_unique(self) -> int:
        return len(self.unique_points)

    @property
    def has_duplicates(self) -> bool:
        return self.n_unique < self.n_original


def dedupe_points(points) -> DedupMap:
    """
    Merge points whose coordinates are bitwise identical.

    The representative of each group is its smallest original index, and
    unique points keep the order of their representatives.

    Raises:
        DataError: On empty input or a non-finite coordinate
    """
    pts = as_points_array(points)
    if len(pts) == 0:
        raise DataError("cannot dedupe an empty point list")

    # Bit patterns are exact; signed zeros were folded by as_points_array.
    bits = np.ascontiguousarray(pts).view(np.uint64)
    _, first, inverse, counts = np.unique(
        bits, axis=0, return_index=True, return_inverse=True, return_counts=True
    )
    inverse = inverse.reshape(-1)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))

    unique_points = pts[first[order]]
    unique_points.setflags(write=False)
    remap = rank[inverse]
    representatives = first[order]
    multiplicity = counts[order]
    for arr in (remap, representatives, multiplicity):
        arr.setflags(write=False)

    if len(unique_points) < len(pts):
        logger.info(
            "Merged duplicate points",
            extra={"points": len(pts), "unique": len(unique_points)},
        )
    return DedupMap(
        unique_points=unique_points,
        remap=remap,
        representatives=representatives,
        multiplicity=multiplicity,
    )


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Delaunay triangulation over ``points``.

    ``triangles[t]`` holds three vertex ids in counter-clockwise order, rotated
    so the smallest id comes first; rows are sorted. ``neighbors[t, k]`` is the
    triangle across the edge opposite vertex ``k`` of ``t``, or ``BOUNDARY``.
    """

    points: np.ndarray
    triangles: np.ndarray
    neighbors: np.ndarray
    _edge_owner: Dict[Tuple[int, int], int] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def opposite(self, u: int, v: int) -> int:
        """Triangle on the far side of directed edge ``u -> v``, or BOUNDARY."""
        return self._edge_owner.get((v, u), BOUNDARY)

    def edges(self) -> List[Tuple[int, int]]:
        return triangle_edges(self.triangles.tolist())

    def hull_edges(self) -> List[Tuple[int, int]]:
        """Directed convex-hull edges, interior on the left."""
        hull = []
        for t, tri in enumerate(self.triangles.tolist()):
            for k in range(3):
                if self.neighbors[t, k] == BOUNDARY:
                    hull.append((tri[(k + 1) % 3], tri[(k + 2) % 3]))
        return sorted(hull)


class _Builder:
    """Mutable state of one incremental construction."""

    def __init__(self, pts: np.ndarray):
        self.coords: List[Tuple[float, float]] = [
            (float(x), float(y)) for x, y in pts
        ]
        self.tris: List[Tuple[int, int, int] | None] = []
        self.edge_to_tri: Dict[Tuple[int, int], int] = {}
        self.live = 0
        self.last = 0

    def add(self, a: int, b: int, c: int) -> int:
        t = len(self.tris)
        self.tris.append((a, b, c))
        for e in ((a, b), (b, c), (c, a)):
            self.edge_to_tri[e] = t
        self.live += 1
        return t

    def remove(self, t: int) -> None:
        a, b, c = self.tris[t]
        for e in ((a, b), (b, c), (c, a)):
            if self.edge_to_tri.get(e) == t:
                del self.edge_to_tri[e]
        self.tris[t] = None
        self.live -= 1

    def across(self, u: int, v: int) -> int:
        return self.edge_to_tri[(v, u)]

    def _strictly_between(self, u: int, v: int, p: Tuple[float, float]) -> bool:
        (ux, uy), (vx, vy) = self.coords[u], self.coords[v]
        if ux != vx:
            return min(ux, vx) < p[0] < max(ux, vx)
        return min(uy, vy) < p[1] < max(uy, vy)

    def in_conflict(self, t: int, p: Tuple[float, float]) -> bool:
        a, b, c = self.tris[t]
        if c == GHOST:
            s = orient2d_sign(self.coords[a], self.coords[b], p)
            return s > 0 or (s == 0 and self._strictly_between(a, b, p))
        return incircle_sign(self.coords[a], self.coords[b], self.coords[c], p) > 0

    def locate(self, p: Tuple[float, float]) -> int:
        """Walk towards ``p`` and return a triangle in conflict with it."""
        t = self.last
        if self.tris[t] is None:
            t = next(i for i, tri in enumerate(self.tris) if tri is not None)
        if self.tris[t][2] == GHOST:
            a, b, _ = self.tris[t]
            t = self.across(a, b)

        for _ in range(self.live + 1):
            a, b, c = self.tris[t]
            for u, v in ((a, b), (b, c), (c, a)):
                if orient2d_sign(self.coords[u], self.coords[v], p) < 0:
                    t = self.across(u, v)
                    break
            else:
                return t
            if self.tris[t][2] == GHOST:
                return t

        # Walk did not settle; scan instead.
        logger.debug("Point-location walk exceeded budget, scanning")
        return next(
            i
            for i, tri in enumerate(self.tris)
            if tri is not None and self.in_conflict(i, p)
        )

    def insert(self, v: int) -> None:
        p = self.coords[v]
        seed = self.locate(p)
        cavity = {seed}
        stack = [seed]
        boundary: List[Tuple[int, int]] = []
        while stack:
            t = stack.pop()
            a, b, c = self.tris[t]
            for u, w in ((a, b), (b, c), (c, a)):
                nb = self.across(u, w)
                if nb in cavity:
                    continue
                if self.in_conflict(nb, p):
                    cavity.add(nb)
                    stack.append(nb)
                else:
                    boundary.append((u, w))

        for t in sorted(cavity):
            self.remove(t)
        for u, w in boundary:
            if w == GHOST:
                t = self.add(v, u, GHOST)
            elif u == GHOST:
                t = self.add(w, v, GHOST)
            else:
                t = self.add(u, w, v)
                self.last = t


def _first_triangle(pts: np.ndarray) -> Tuple[int, int, int]:
    coords = [(float(x), float(y)) for x, y in pts]
    for k in range(2, len(coords)):
        s = orient2d_sign(coords[0], coords[1], coords[k])
        if s > 0:
            return (0, 1, k)
        if s < 0:
            return (0, k, 1)
    raise DegenerateInput(f"all {len(coords)} points are collinear")


def build_delaunay(points) -> Triangulation:
    """
    Build the Delaunay triangulation of distinct points.

    Args:
        points: At least three distinct, not all collinear points

    Returns:
        Triangulation satisfying the empty-circumcircle property

    Raises:
        DegenerateInput: Fewer than three points, or all points collinear
        DataError: If the input contains duplicate points
    """
    pts = as_points_array(points)
    n = len(pts)
    if n < 3:
        raise DegenerateInput(f"need at least 3 distinct points, got {n}")
    if dedupe_points(pts).has_duplicates:
        raise DataError("duplicate points; merge them with dedupe_points first")

    a, b, c = _first_triangle(pts)
    builder = _Builder(pts)
    builder.last = builder.add(a, b, c)
    builder.add(b, a, GHOST)
    builder.add(c, b, GHOST)
    builder.add(a, c, GHOST)

    for v in range(n):
        if v not in (a, b, c):
            builder.insert(v)

    triangulation = _finish(pts, builder)
    logger.info(
        "Delaunay triangulation built",
        extra={"points": n, "triangles": len(triangulation.triangles)},
    )
    return triangulation


def _canonical(tri: Sequence[int]) -> Tuple[int, int, int]:
    k = min(range(3), key=lambda i: tri[i])
    return (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3])


def _finish(pts: np.ndarray, builder: _Builder) -> Triangulation:
    real = sorted(
        _canonical(tri)
        for tri in builder.tris
        if tri is not None and GHOST not in tri
    )
    owner: Dict[Tuple[int, int], int] = {}
    for t, (a, b, c) in enumerate(real):
        for e in ((a, b), (b, c), (c, a)):
            owner[e] = t

    neighbors = np.full((len(real), 3), BOUNDARY, dtype=np.int64)
    for t, tri in enumerate(real):
        for k in range(3):
            u, v = tri[(k + 1) % 3], tri[(k + 2) % 3]
            neighbors[t, k] = owner.get((v, u), BOUNDARY)

    triangles = np.array(real, dtype=np.int64).reshape(-1, 3)
    triangles.setflags(write=False)
    neighbors.setflags(write=False)
    return Triangulation(
        points=pts, triangles=triangles, neighbors=neighbors, _edge_owner=owner
    )


def adjacency(tri: Triangulation) -> NeighborGraph:
    """Delaunay graph: vertices adjacent iff they share a triangle edge."""
    return NeighborGraph.from_edges(tri.n, tri.edges())


def delaunay_graph(points) -> NeighborGraph:
    """Shortcut for ``adjacency(build_delaunay(points))``."""
    return adjacency(build_delaunay(points))


def triangle_edges(triangles: Iterable[Sequence[int]]) -> List[Tuple[int, int]]:
    """Undirected edges of a triangle list, ``i < j``, sorted."""
    found = set()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            found.add((min(u, v), max(u, v)))
    return sorted(found)
