"""
Unit tests for the data contracts.
"""

from pydantic import ValidationError
import pytest

from itcluster.contracts import (
    GraphKind,
    MixtureComponent,
    MixtureSpec,
    Point2,
    RenderOptions,
    SweepRow,
)


class TestPoint2:
    """Test Point2 model validation and behavior."""

    def test_valid_point(self):
        """Finite coordinates are accepted."""
        p = Point2.of((1, -2.5))
        assert p.as_tuple() == (1.0, -2.5)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_non_finite_rejected(self, bad):
        """NaN and infinity are refused."""
        with pytest.raises(ValidationError):
            Point2(x=bad, y=0.0)

    def test_frozen(self):
        """Points are immutable."""
        p = Point2(x=0, y=0)
        with pytest.raises(ValidationError):
            p.x = 1.0


class TestMixtureSpec:
    """Test mixture specifications."""

    def test_list_mean_and_scalar_stddev(self):
        """Preset-file shorthand is coerced."""
        c = MixtureComponent.model_validate({"mean": [1, 2], "stddev": 0.5, "count": 3})
        assert c.mean == Point2(x=1, y=2)
        assert c.stddev == (0.5, 0.5)

    def test_bad_mean_length(self):
        """Means have exactly two coordinates."""
        with pytest.raises(ValidationError):
            MixtureComponent.model_validate({"mean": [1], "stddev": 1, "count": 3})

    @pytest.mark.parametrize("field,value", [("count", 0), ("stddev", -1.0)])
    def test_non_positive_rejected(self, field, value):
        """Counts and spreads must be positive."""
        raw = {"mean": [0, 0], "stddev": 1.0, "count": 3, field: value}
        with pytest.raises(ValidationError):
            MixtureComponent.model_validate(raw)

    def test_needs_components(self):
        """An empty mixture is refused."""
        with pytest.raises(ValidationError):
            MixtureSpec(components=(), seed=1)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        """Seeds are unsigned 64-bit."""
        comp = {"mean": [0, 0], "stddev": 1, "count": 1}
        with pytest.raises(ValidationError):
            MixtureSpec.model_validate({"components": [comp], "seed": seed})

    def test_total_count(self):
        """Counts add up over components."""
        comp = {"mean": [0, 0], "stddev": 1, "count": 4}
        spec = MixtureSpec.model_validate({"components": [comp, comp], "seed": 0})
        assert spec.total_count == 8


class TestGraphKind:
    """Test graph selection."""

    def test_default_is_delaunay(self):
        """No arguments selects the Delaunay graph."""
        assert GraphKind().kind == "delaunay"
        assert GraphKind().label == "delaunay"

    def test_knn_labels(self):
        """k and mutual show up in the label."""
        assert GraphKind(kind="knn", k=4).label == "knn(4)"
        assert GraphKind(kind="knn", k=4, mutual=True).label == "mutual-knn(4)"

    @pytest.mark.parametrize("k", [None, 0, -3])
    def test_knn_needs_positive_k(self, k):
        """knn without a positive k is refused."""
        with pytest.raises(ValidationError):
            GraphKind(kind="knn", k=k)

    def test_k_only_for_knn(self):
        """k and mutual make no sense for other graphs."""
        with pytest.raises(ValidationError):
            GraphKind(kind="rng", k=3)
        with pytest.raises(ValidationError):
            GraphKind(kind="mst", mutual=True)

    def test_unknown_kind(self):
        """Only the known graph names are accepted."""
        with pytest.raises(ValidationError):
            GraphKind(kind="gabriel")


class TestSweepRow:
    """Test sweep rows."""

    def test_without_indexes(self):
        """Rows without ground truth carry no indexes."""
        row = SweepRow(sigma=0.5, cluster_count=3)
        assert row.ari is None and row.nmi is None

    def test_indexes_come_together(self):
        """ARI without NMI is refused."""
        with pytest.raises(ValidationError):
            SweepRow(sigma=0.5, cluster_count=3, ari=0.9)

    @pytest.mark.parametrize(
        "raw",
        [
            {"sigma": 0.0, "cluster_count": 1},
            {"sigma": 1.0, "cluster_count": 0},
            {"sigma": 1.0, "cluster_count": 1, "ari": 1.5, "nmi": 0.5},
            {"sigma": 1.0, "cluster_count": 1, "ari": 0.5, "nmi": -0.1},
        ],
    )
    def test_out_of_range(self, raw):
        """Sigma, counts and indexes are range checked."""
        with pytest.raises(ValidationError):
            SweepRow(**raw)


class TestRenderOptions:
    """Test renderer options."""

    def test_defaults(self):
        """Defaults colour by cluster and draw both edge sets."""
        options = RenderOptions()
        assert options.color_by == "cluster"
        assert options.edge_style == "both"

    def test_margin_must_leave_room(self):
        """Margins cannot swallow the canvas."""
        with pytest.raises(ValidationError):
            RenderOptions(width=100, height=100, margin=50)

    def test_unknown_style(self):
        """Only known edge styles are accepted."""
        with pytest.raises(ValidationError):
            RenderOptions(edge_style="dotted")
