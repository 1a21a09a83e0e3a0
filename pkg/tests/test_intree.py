"""
Unit tests for in-tree construction, root resolution and forest validation.
"""

import numpy as np
import pytest

from itcluster.errors import DataError, ForestInvariantError, InvalidParameter
from itcluster.geometry import NeighborGraph, chain_graph, delaunay_graph
from itcluster.intree import (
    InTreeForest,
    build_forest,
    directed_neighbor,
    forest_to_csv_text,
    forest_to_json,
    local_minima,
    lower_neighbor_set,
    resolve_roots,
)
from itcluster.potential import Metric, PotentialField, compute_potentials
from itcluster.validate import validate_forest, validate_points

from .oracles import brute_forest, brute_local_minima, brute_roots

# Two triangles with their densest vertex facing away from the other one.
TWO_TRIANGLES = [
    (0.0, 0.0),
    (0.0, 1.0),
    (-0.8, 0.5),
    (10.0, 0.0),
    (10.0, 1.0),
    (10.8, 0.5),
]


def field_of(values) -> PotentialField:
    return PotentialField(sigma=1.0, values=np.asarray(values, dtype=float))


def random_instance(seed: int):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 301))
    pts = rng.random((n, 2)) * rng.choice([1.0, 10.0, 100.0])
    sigma = float(10 ** rng.uniform(-2, 4))
    return pts, sigma


class TestLowerNeighborSet:
    """Test the set of lower graph neighbours."""

    def test_triangle_root_has_none(self):
        """The lowest vertex of a triangle has no lower neighbour."""
        graph = delaunay_graph([(0, 0), (1, 0), (0, 1)])
        field = field_of([-2.0, -3.0, -1.0])
        assert lower_neighbor_set(1, graph, field) == frozenset()
        assert lower_neighbor_set(2, graph, field) == {0, 1}

    def test_two_points_index_tie_break(self):
        """Equal potentials: index 1 sees 0, index 0 sees nothing."""
        pts = [(0.0, 0.0), (2.0, 0.0)]
        graph = chain_graph(np.array(pts))
        field = compute_potentials(pts, sigma=1.0)
        assert field.values[0] == field.values[1]
        assert lower_neighbor_set(1, graph, field) == {0}
        assert lower_neighbor_set(0, graph, field) == frozenset()

    def test_collinear_middle_is_lowest(self):
        """x = 0, 1, 3: the middle point is every endpoint's only lower neighbour."""
        pts = [(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]
        graph = chain_graph(np.array(pts))
        field = compute_potentials(pts, sigma=1.0)
        assert lower_neighbor_set(1, graph, field) == frozenset()
        assert lower_neighbor_set(0, graph, field) == {1}
        assert lower_neighbor_set(2, graph, field) == {1}


class TestDirectedNeighbor:
    """Test the nearest-lower-neighbour choice."""

    def setup_method(self):
        self.points = [(0.0, 0.0)] + [(5.0 + i, 5.0) for i in range(8)]
        self.points[3] = (1.0, 0.0)
        self.points[8] = (-1.0, 0.0)
        self.points[5] = (0.0, 3.0)
        self.graph = NeighborGraph.from_edges(9, [(0, 3), (0, 8), (0, 5)])

    def test_root_has_no_directed_neighbor(self):
        """Empty lower set gives no parent."""
        field = field_of([-5.0] + [-1.0] * 8)
        assert directed_neighbor(0, self.graph, field, self.points) is None

    def test_nearest_lower_wins(self):
        """The closest lower neighbour is chosen."""
        values = [-1.0] * 9
        values[5], values[8] = -4.0, -2.0
        parent = directed_neighbor(0, self.graph, field_of(values), self.points)
        assert parent == 8

    def test_distance_tie_goes_to_smaller_id(self):
        """Equidistant lower neighbours 3 and 8 resolve to 3."""
        values = [-1.0] * 9
        values[3], values[8] = -2.0, -3.0
        parent = directed_neighbor(0, self.graph, field_of(values), self.points)
        assert parent == 3

    def test_manhattan_metric(self):
        """The nearest neighbour follows the chosen metric."""
        points = [(0.0, 0.0), (1.0, 1.0), (1.5, 0.0)]
        graph = NeighborGraph.from_edges(3, [(0, 1), (0, 2)])
        field = field_of([-1.0, -2.0, -2.0])
        assert directed_neighbor(0, graph, field, points, Metric.EUCLIDEAN) == 1
        assert directed_neighbor(0, graph, field, points, Metric.MANHATTAN) == 2

    def test_wide_extent_keeps_nearest(self):
        """Gaps whose squares overflow still pick the closer neighbour."""
        points = [(0.0, 0.0), (1e200, 0.0), (3e200, 0.0)]
        graph = NeighborGraph.from_edges(3, [(0, 2), (1, 2)])
        field = field_of([-2.0, -2.0, -1.0])
        assert directed_neighbor(2, graph, field, points) == 1

    def test_squared_metric_rejected(self):
        """Only kernel metrics pick neighbours."""
        with pytest.raises(InvalidParameter, match="metric"):
            directed_neighbor(
                0, self.graph, field_of([-1.0] * 9), self.points, "sqeuclidean"
            )


class TestBuildForest:
    """Test in-tree forest construction."""

    def test_single_point(self):
        """One point is one root."""
        forest = build_forest(
            NeighborGraph.empty(1), field_of([-1.0]), [(0.0, 0.0)]
        )
        assert forest.parent == (None,)
        assert forest.edge_count == 0

    def test_two_separated_triangles(self):
        """Two distant triangles give two roots and four links."""
        graph = delaunay_graph(TWO_TRIANGLES)
        field = compute_potentials(TWO_TRIANGLES, sigma=1.0)
        forest = build_forest(graph, field, TWO_TRIANGLES)
        assert forest.roots == [2, 5]
        assert forest.edge_count == 4
        assert forest.parent == (2, 2, None, 5, 5, None)
        labeling = resolve_roots(forest)
        assert labeling.n_clusters == 2
        assert labeling.label == (0, 0, 0, 1, 1, 1)

    def test_size_mismatch(self):
        """Graph and field must cover the same vertices."""
        with pytest.raises(DataError):
            build_forest(NeighborGraph.empty(2), field_of([-1.0]), [(0, 0), (1, 1)])

    @pytest.mark.parametrize("seed", range(100))
    def test_matches_brute_force_oracle(self, seed):
        """Parents, roots and local minima agree with a from-scratch oracle."""
        pts, sigma = random_instance(seed)
        n = len(pts)
        graph = delaunay_graph(pts)
        field = compute_potentials(pts, sigma)
        values = field.values.tolist()

        forest = build_forest(graph, field, pts)
        expected = brute_forest(pts, graph, values)
        assert list(forest.parent) == expected
        assert validate_forest(forest, field, graph) == []

        labeling = resolve_roots(forest)
        assert list(labeling.root_of) == brute_roots(expected)
        minima = brute_local_minima(graph, values)
        assert labeling.roots == minima
        assert local_minima(graph, field) == minima
        assert labeling.n_clusters == len(minima)
        assert forest.edge_count == n - labeling.n_clusters

    @pytest.mark.parametrize("seed", range(5))
    def test_self_term_does_not_change_forest(self, seed):
        """Dropping the self-term keeps every link."""
        pts = np.random.default_rng(200 + seed).random((100, 2))
        graph = delaunay_graph(pts)
        with_self = build_forest(graph, compute_potentials(pts, 0.05), pts)
        without = compute_potentials(pts, 0.05, include_self=False)
        assert build_forest(graph, without, pts) == with_self

    def test_paths_end_within_n_steps(self):
        """Every parent chain reaches a root in at most n - 1 steps."""
        pts = np.random.default_rng(42).random((150, 2))
        forest = build_forest(
            delaunay_graph(pts), compute_potentials(pts, 0.05), pts
        )
        for start in range(forest.n):
            u, steps = start, 0
            while forest.parent[u] is not None:
                u = forest.parent[u]
                steps += 1
            assert steps <= forest.n - 1


class TestResolveRoots:
    """Test root resolution and labelling."""

    def test_all_roots(self):
        """Parentless vertices are their own clusters."""
        labeling = resolve_roots(InTreeForest.from_parents([None] * 4))
        assert labeling.root_of == (0, 1, 2, 3)
        assert labeling.n_clusters == 4

    def test_chain(self):
        """3 -> 2 -> 1 -> 0 is one cluster rooted at 0."""
        labeling = resolve_roots(InTreeForest.from_parents([None, 0, 1, 2]))
        assert labeling.root_of == (0, 0, 0, 0)
        assert labeling.n_clusters == 1

    def test_labels_follow_root_order(self):
        """Label 0 belongs to the smallest root id."""
        forest = InTreeForest.from_parents([4, 2, None, 1, None])
        labeling = resolve_roots(forest)
        assert labeling.root_of == (4, 2, 2, 2, 4)
        assert labeling.label == (1, 0, 0, 0, 1)

    def test_cycle_detected(self):
        """A parent cycle is an invariant violation."""
        with pytest.raises(ForestInvariantError, match="cycle"):
            resolve_roots(InTreeForest.from_parents([1, 0, None]))


class TestForestExport:
    """Test forest text and JSON export."""

    def test_csv_text(self):
        """Roots get an empty parent cell."""
        forest = InTreeForest.from_parents([None, 0, 1])
        assert forest_to_csv_text(forest) == "index,parent\n0,\n1,0\n2,1\n"

    def test_json_payload(self):
        """Payload carries points, parents and potentials."""
        forest = InTreeForest.from_parents([None, 0])
        payload = forest_to_json([(0, 0), (1, 2)], forest, field_of([-2.0, -1.0]))
        assert payload["points"] == [[0.0, 0.0], [1.0, 2.0]]
        assert payload["parent"] == [None, 0]
        assert payload["roots"] == [0]
        assert payload["potential"] == [-2.0, -1.0]


class TestValidateForest:
    """Test forest diagnostics."""

    def test_two_cycle_reported(self):
        """A 2-cycle is an acyclicity violation."""
        forest = InTreeForest.from_parents([1, 0, None])
        issues = validate_forest(forest, field_of([-1.0, -2.0, -3.0]))
        assert any(i.startswith("acyclicity:") for i in issues)

    def test_self_parent_reported(self):
        """A vertex cannot be its own parent."""
        forest = InTreeForest.from_parents([0, None])
        issues = validate_forest(forest, field_of([-1.0, -2.0]))
        assert issues == ["acyclicity: 0 is its own parent"]

    def test_non_descending_parent_reported(self):
        """A parent above its child in the order is a descent violation."""
        forest = InTreeForest.from_parents([None, 0])
        issues = validate_forest(forest, field_of([-1.0, -2.0]))
        assert issues == ["descent: parent 0 of 1 is not lower in the order"]

    def test_root_with_lower_neighbor_reported(self):
        """With a graph, a root must be a local minimum."""
        graph = NeighborGraph.from_edges(2, [(0, 1)])
        forest = InTreeForest.from_parents([None, None])
        issues = validate_forest(forest, field_of([-2.0, -1.0]), graph)
        assert issues == ["root-minimum: root 1 has lower neighbour 0"]

    def test_parent_off_graph_reported(self):
        """Links must follow graph edges."""
        graph = NeighborGraph.from_edges(3, [(0, 1), (1, 2)])
        forest = InTreeForest.from_parents([None, 0, 0])
        issues = validate_forest(forest, field_of([-3.0, -2.0, -1.0]), graph)
        assert "graph: parent 0 of 2 is not a graph neighbour" in issues

    def test_size_mismatch_reported(self):
        """Forest and field sizes must agree."""
        issues = validate_forest(InTreeForest.from_parents([None]), field_of([-1, -1]))
        assert issues[0].startswith("size:")

    def test_pure_cycle_has_no_root(self):
        """A forest made only of a cycle reports the cycle and the missing root."""
        forest = InTreeForest.from_parents([1, 0])
        issues = validate_forest(forest, field_of([-1.0, -2.0]))
        assert "acyclicity: cycle through [0, 1]" in issues
        assert "roots: forest has no root" in issues

    def test_links_into_a_cycle_break_edge_count(self):
        """Links that never reach a root break the edge count identity."""
        forest = InTreeForest.from_parents([None, 2, 1, 1])
        issues = validate_forest(forest, field_of([-4.0, -3.0, -2.0, -1.0]))
        assert "edges: 3 links, but only 1 vertices reach the 1 roots" in issues
        assert "acyclicity: cycle through [1, 2]" in issues

    def test_valid_chain_has_no_issues(self):
        """Each vertex linking to its lower graph neighbour passes every check."""
        graph = NeighborGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        forest = InTreeForest.from_parents([None, 0, 1, 2])
        assert validate_forest(forest, field_of([-4.0, -3.0, -2.0, -1.0]), graph) == []


class TestValidatePoints:
    """Test point-set checks."""

    def test_valid(self):
        """Finite (n, 2) input passes."""
        assert validate_points([(0, 0), (1, 1)]) == []

    def test_empty(self):
        """Empty input is reported."""
        assert validate_points([]) == ["schema: point set is empty"]

    def test_non_finite(self):
        """Non-finite rows are counted."""
        issues = validate_points([(0, 0), (float("inf"), 1), (2, float("nan"))])
        assert issues == ["finite: 2 points with non-finite coordinates, first 1"]

    def test_wrong_shape(self):
        """Rows must have two coordinates."""
        assert validate_points([(0, 0, 0)])[0].startswith("schema:")
