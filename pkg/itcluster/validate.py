"""Validation helpers for point sets and in-tree forests.

Checks return lists of ``"<check>: <detail>"`` strings; an empty list means
the input passed.
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from .geometry.graph import NeighborGraph
from .intree import InTreeForest
from .potential import PotentialField, strictly_lower


def validate_points(points) -> List[str]:
    issues: List[str] = []
    try:
        arr = np.asarray(points, dtype=float)
    except (TypeError, ValueError):
        return ["schema: points are not numeric"]
    if arr.size == 0:
        return ["schema: point set is empty"]
    if arr.ndim != 2 or arr.shape[1] != 2:
        return [f"schema: expected shape (n, 2), got {arr.shape}"]
    bad = np.flatnonzero(~np.isfinite(arr).all(axis=1))
    if len(bad):
        issues.append(
            f"finite: {len(bad)} points with non-finite coordinates, first {bad[0]}"
        )
    return issues


def _cycles(forest: InTreeForest) -> List[List[int]]:
    """Parent-link cycles, each listed from its smallest vertex."""
    state = [0] * forest.n  # 0 unseen, 1 on current walk, 2 finished
    found: List[List[int]] = []
    for start in range(forest.n):
        path: List[int] = []
        u: Optional[int] = start
        while u is not None and state[u] == 0:
            state[u] = 1
            path.append(u)
            u = forest.parent[u]
        if u is not None and state[u] == 1:
            cycle = path[path.index(u):]
            k = cycle.index(min(cycle))
            found.append(cycle[k:] + cycle[:k])
        for w in path:
            state[w] = 2
    return found


def _reaching_root(forest: InTreeForest) -> int:
    """Number of vertices whose parent chain ends at a root."""
    state = [0] * forest.n  # 0 unseen, 1 on current walk, 2 reaches, 3 does not
    for start in range(forest.n):
        path: List[int] = []
        u: Optional[int] = start
        while u is not None and state[u] == 0:
            state[u] = 1
            path.append(u)
            u = forest.parent[u]
        reaches = u is None or state[u] == 2
        for w in path:
            state[w] = 2 if reaches else 3
    return state.count(2)


def validate_forest(
    forest: InTreeForest,
    field: PotentialField,
    graph: Optional[NeighborGraph] = None,
) -> List[str]:
    """
    Check the structural properties every in-tree forest must have.

    Checks acyclicity, strict descent along each link, the edge count
    identity (links equal vertices reaching a root minus roots) and, when
    ``graph`` is given, that links follow graph edges and that roots are
    exactly the local minima of the potential order.
    """
    issues: List[str] = []
    n = forest.n
    if field.n != n:
        return [f"size: forest has {n} vertices, potential field has {field.n}"]
    if graph is not None and graph.n != n:
        return [f"size: forest has {n} vertices, graph has {graph.n}"]

    for i, p in enumerate(forest.parent):
        if p is None:
            continue
        if not 0 <= p < n:
            issues.append(f"range: parent {p} of {i} is out of range")
        elif p == i:
            issues.append(f"acyclicity: {i} is its own parent")
    if issues:
        return issues

    for cycle in _cycles(forest):
        issues.append(f"acyclicity: cycle through {cycle}")

    for i, p in forest.edges():
        if not strictly_lower(field, p, i):
            issues.append(f"descent: parent {p} of {i} is not lower in the order")

    roots = forest.roots
    rooted = _reaching_root(forest)
    if forest.edge_count != rooted - len(roots):
        issues.append(
            f"edges: {forest.edge_count} links, but only {rooted} vertices reach "
            f"the {len(roots)} roots"
        )
    if n and not roots:
        issues.append("roots: forest has no root")

    if graph is not None:
        for i, p in forest.edges():
            if p not in graph.neighbors(i):
                issues.append(f"graph: parent {p} of {i} is not a graph neighbour")
        for r in roots:
            lower = [k for k in graph.neighbors(r) if strictly_lower(field, k, r)]
            if lower:
                issues.append(f"root-minimum: root {r} has lower neighbour {lower[0]}")
        for i, p in forest.edges():
            if all(strictly_lower(field, i, k) for k in graph.neighbors(i)):
                issues.append(f"root-minimum: local minimum {i} has parent {p}")
    return issues
