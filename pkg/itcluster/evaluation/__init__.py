"""Datasets, file I/O, the clustering pipeline and partition-agreement scores."""

from .datasets import generate_mixture
from .io_csv import (
    atomic_write_text,
    load_points_csv,
    read_edge_list,
    read_result_csv,
    write_edge_list,
    write_points_csv,
    write_result_csv,
    write_sweep_csv,
)
from .metrics import adjusted_rand_index, normalized_mutual_information
from .pipeline import (
    ClusterResult,
    cluster_pipeline,
    parse_sigma_list,
    parse_sigma_range,
    sweep_sigma,
)

__all__ = [
    "ClusterResult",
    "adjusted_rand_index",
    "atomic_write_text",
    "cluster_pipeline",
    "generate_mixture",
    "load_points_csv",
    "normalized_mutual_information",
    "parse_sigma_list",
    "parse_sigma_range",
    "read_edge_list",
    "read_result_csv",
    "sweep_sigma",
    "write_edge_list",
    "write_points_csv",
    "write_result_csv",
    "write_sweep_csv",
]
