"""
Unit tests for the partition-agreement indexes.
"""

import numpy as np
import pytest

from itcluster.errors import DataError
from itcluster.evaluation.metrics import (
    adjusted_rand_index,
    normalized_mutual_information,
)


class TestAdjustedRandIndex:
    """Test the adjusted Rand index."""

    def test_identical(self):
        """Equal partitions score 1."""
        assert adjusted_rand_index([0, 0, 1, 1, 2], [0, 0, 1, 1, 2]) == 1.0

    def test_label_names_do_not_matter(self):
        """Renaming clusters keeps the score."""
        assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
        assert adjusted_rand_index([0, 0, 1, 1], [7, 7, 3, 3]) == 1.0

    def test_one_cluster_against_singletons(self):
        """No agreeing pair gives 0."""
        assert adjusted_rand_index([0, 0, 0, 0], [0, 1, 2, 3]) == 0.0

    def test_symmetric(self):
        """Swapping the arguments keeps the score."""
        rng = np.random.default_rng(1)
        a, b = rng.integers(0, 4, 200), rng.integers(0, 3, 200)
        assert adjusted_rand_index(a, b) == pytest.approx(adjusted_rand_index(b, a))

    def test_independent_labels_near_zero(self):
        """Unrelated partitions score close to 0."""
        rng = np.random.default_rng(2)
        a, b = rng.integers(0, 3, 10_000), rng.integers(0, 3, 10_000)
        assert abs(adjusted_rand_index(a, b)) < 0.05

    def test_length_mismatch(self):
        """Label lists must have equal length."""
        with pytest.raises(DataError):
            adjusted_rand_index([0, 1], [0, 1, 1])

    def test_empty(self):
        """Empty label lists are refused."""
        with pytest.raises(DataError):
            adjusted_rand_index([], [])


class TestNormalizedMutualInformation:
    """Test normalised mutual information."""

    def test_identical(self):
        """Equal partitions score 1."""
        labels = [0, 1, 1, 2, 2, 2]
        assert normalized_mutual_information(labels, labels) == pytest.approx(1.0)

    def test_label_names_do_not_matter(self):
        """Renaming clusters keeps the score."""
        score = normalized_mutual_information([0, 0, 1, 1], [5, 5, 2, 2])
        assert score == pytest.approx(1.0)

    def test_both_single_cluster(self):
        """Two one-cluster partitions agree completely."""
        assert normalized_mutual_information([0, 0, 0], [4, 4, 4]) == 1.0

    def test_bounded(self):
        """Scores stay within [0, 1]."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b = rng.integers(0, 5, 50), rng.integers(0, 5, 50)
            assert 0.0 <= normalized_mutual_information(a, b) <= 1.0

    def test_independent_labels_near_zero(self):
        """Unrelated partitions share almost no information."""
        rng = np.random.default_rng(4)
        a, b = rng.integers(0, 3, 10_000), rng.integers(0, 3, 10_000)
        assert normalized_mutual_information(a, b) < 0.05

    def test_symmetric(self):
        """Swapping the arguments keeps the score."""
        rng = np.random.default_rng(5)
        a, b = rng.integers(0, 4, 300), rng.integers(0, 2, 300)
        assert normalized_mutual_information(a, b) == pytest.approx(
            normalized_mutual_information(b, a)
        )

    def test_length_mismatch(self):
        """Label lists must have equal length."""
        with pytest.raises(DataError):
            normalized_mutual_information([0], [0, 0])
