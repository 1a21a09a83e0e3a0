"""Partition-agreement indexes."""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score

from ..errors import DataError


def _labels_pair(a: Sequence[int], b: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    if len(a) != len(b):
        raise DataError(f"label lists differ in length: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise DataError("label lists are empty")
    return a, b


def adjusted_rand_index(a: Sequence[int], b: Sequence[int]) -> float:
    """Pair-counting agreement corrected for chance; 1.0 for equal partitions."""
    a, b = _labels_pair(a, b)
    return float(np.clip(adjusted_rand_score(a, b), -1.0, 1.0))


def normalized_mutual_information(a: Sequence[int], b: Sequence[int]) -> float:
    """
    Mutual information over the arithmetic mean of the two entropies.

    Two single-cluster partitions score 1.0.
    """
    a, b = _labels_pair(a, b)
    if len(np.unique(a)) == 1 and len(np.unique(b)) == 1:
        return 1.0
    score = normalized_mutual_info_score(a, b, average_method="arithmetic")
    return float(np.clip(score, 0.0, 1.0))
