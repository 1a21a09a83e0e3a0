from __future__ import annotations

import argparse
from pathlib import Path
import sys
from typing import Optional, Sequence

from .config import get_mixture_preset, load_mixture_spec
from .contracts import GraphKind, RenderOptions
from .errors import DataError, ForestInvariantError, InvalidParameter
from .evaluation.datasets import generate_mixture
from .evaluation.io_csv import (
    atomic_write_text,
    load_points_csv,
    read_edge_list,
    read_result_csv,
    write_edge_list,
    write_json,
    write_points_csv,
    write_result_csv,
    write_sweep_csv,
)
from .evaluation.pipeline import (
    cluster_pipeline,
    parse_sigma_list,
    parse_sigma_range,
    sweep_sigma,
)
from .geometry.delaunay import dedupe_points
from .geometry.graph import NeighborGraph, graph_to_json
from .intree import forest_to_csv_text, forest_to_json
from .logging_utils import get_logger
from .potential import PUBLIC_METRICS, PotentialField, validate_sigma
from .proxgraphs import build_graph
from .render import render_svg
from .validate import validate_points

logger = get_logger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

GRAPH_CHOICES = ["delaunay", "knn", "mst", "rng", "complete"]
METRIC_CHOICES = [m.value for m in PUBLIC_METRICS]


class UsageError(Exception): ...


class _ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting so ``main`` owns the exit code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _graph_kind(kind: str, k: Optional[int], mutual: bool) -> GraphKind:
    try:
        return GraphKind(kind=kind, k=k, mutual=mutual)
    except ValueError as e:
        raise InvalidParameter(f"invalid graph options: {e}") from e


def _workers(value: Optional[int]) -> Optional[int]:
    if value is not None and value < 1:
        raise InvalidParameter(f"--workers must be >= 1, got {value}")
    return value


def _default_out(path: Path, suffix: str) -> Path:
    return path.with_name(f"{path.stem}.{suffix}")


def _load_points(path: Path):
    points, labels = load_points_csv(path)
    issues = validate_points(points)
    if issues:
        raise DataError(f"{path}: " + "; ".join(issues))
    return points, labels


def _write_forest(path: Path, points, result) -> None:
    forest = result.original_forest()
    if path.suffix == ".json":
        field = PotentialField(
            sigma=result.sigma, values=result.potentials, metric=result.metric
        )
        write_json(path, forest_to_json(points, forest, field))
    else:
        atomic_write_text(path, forest_to_csv_text(forest))
    logger.info("Forest written", extra={"path": str(path)})


def run_cluster(args: argparse.Namespace) -> int:
    sigma = validate_sigma(args.sigma)
    kind = _graph_kind(args.graph, args.k, args.mutual)
    workers = _workers(args.workers)
    points, _ = _load_points(args.input)
    result = cluster_pipeline(points, sigma, kind, args.metric, workers=workers)
    out = args.out or _default_out(args.input, "clusters.csv")
    write_result_csv(out, result)
    if args.forest is not None:
        _write_forest(args.forest, points, result)
    logger.info("Result written", extra={"path": str(out)})
    print(f"clusters={result.n_clusters}")
    print(f"points={result.n}")
    return EXIT_OK


def run_sweep(args: argparse.Namespace) -> int:
    if args.sigmas is not None:
        sigmas = parse_sigma_list(args.sigmas)
    else:
        sigmas = parse_sigma_range(args.sigma_range)
    kind = _graph_kind(args.graph, args.k, args.mutual)
    workers = _workers(args.workers)
    points, labels = _load_points(args.input)
    if args.truth and labels is None:
        raise DataError(f"{args.input}: --truth needs a label column")
    rows = sweep_sigma(
        points,
        sigmas,
        kind,
        args.metric,
        truth=labels if args.truth else None,
        workers=workers,
    )
    out = args.out or _default_out(args.input, "sweep.csv")
    write_sweep_csv(out, rows)
    for row in rows:
        print(f"sigma={row.sigma:g} clusters={row.cluster_count}")
    return EXIT_OK


def run_graph(args: argparse.Namespace) -> int:
    kind = _graph_kind(args.kind, args.k, args.mutual)
    points, _ = _load_points(args.input)
    dedup = dedupe_points(points)
    unique_graph = build_graph(kind, dedup.unique_points, args.metric)
    reps = dedup.representatives
    graph = NeighborGraph.from_edges(
        dedup.n_original, ((reps[i], reps[j]) for i, j in unique_graph.edges())
    )
    out = args.out or _default_out(args.input, f"{kind.kind}.edges")
    write_edge_list(out, graph)
    if args.json is not None:
        write_json(args.json, graph_to_json(points, graph))
    print(f"edges={graph.edge_count}")
    return EXIT_OK


def run_gen(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec)
    if spec_path.suffix in (".yml", ".yaml"):
        spec = load_mixture_spec(spec_path)
    else:
        spec = get_mixture_preset(args.spec)
    if args.seed is not None and not 0 <= args.seed < 2**64:
        raise InvalidParameter(f"--seed must fit in 64 bits, got {args.seed}")
    points, labels = generate_mixture(spec, seed=args.seed)
    write_points_csv(args.out, points, labels)
    print(f"points={len(points)}")
    return EXIT_OK


def run_render(args: argparse.Namespace) -> int:
    try:
        options = RenderOptions(
            point_radius=args.radius,
            color_by=args.color_by,
            edge_style=args.edge_style,
        )
    except ValueError as e:
        raise InvalidParameter(f"invalid render options: {e}") from e
    frame = read_result_csv(args.result)
    edges = None
    if args.edges is not None:
        edges = read_edge_list(args.edges, n=len(frame))
    atomic_write_text(args.out, render_svg(frame, edges, options))
    print(f"points={len(frame)}")
    return EXIT_OK


def _add_graph_flags(parser: argparse.ArgumentParser, name: str) -> None:
    parser.add_argument(
        name, dest=name.lstrip("-"), choices=GRAPH_CHOICES, default="delaunay"
    )
    parser.add_argument("--k", type=int, default=None, help="neighbours for knn")
    parser.add_argument(
        "--mutual", action="store_true", help="knn: keep only mutual neighbours"
    )
    parser.add_argument("--metric", choices=METRIC_CHOICES, default="euclidean")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="itcluster",
        description=(
            "In-tree clustering: every point descends to its nearest "
            "lower-potential neighbour in a proximity graph."
        ),
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    # cluster
    s_cl = sub.add_parser("cluster", help="cluster a point file")
    s_cl.add_argument("--in", dest="input", type=Path, required=True)
    s_cl.add_argument("--sigma", type=float, required=True)
    _add_graph_flags(s_cl, "--graph")
    s_cl.add_argument("--out", type=Path)
    s_cl.add_argument(
        "--forest", type=Path, help="also write parent links (.json or csv)"
    )
    s_cl.add_argument("--workers", type=int)

    # sweep
    s_sw = sub.add_parser("sweep", help="cluster over a list or range of sigmas")
    s_sw.add_argument("--in", dest="input", type=Path, required=True)
    group = s_sw.add_mutually_exclusive_group(required=True)
    group.add_argument("--sigmas", help="comma-separated sigmas")
    group.add_argument("--sigma-range", help="lo:hi:Nlog or lo:hi:Nlin")
    s_sw.add_argument(
        "--truth", action="store_true", help="score against the label column"
    )
    _add_graph_flags(s_sw, "--graph")
    s_sw.add_argument("--out", type=Path)
    s_sw.add_argument("--workers", type=int)

    # graph
    s_gr = sub.add_parser("graph", help="export a proximity graph edge list")
    s_gr.add_argument("--in", dest="input", type=Path, required=True)
    _add_graph_flags(s_gr, "--kind")
    s_gr.add_argument("--out", type=Path)
    s_gr.add_argument("--json", type=Path)

    # gen
    s_gen = sub.add_parser("gen", help="generate a Gaussian-mixture dataset")
    s_gen.add_argument("--spec", required=True, help="preset name or YAML file")
    s_gen.add_argument("--seed", type=int)
    s_gen.add_argument("--out", type=Path, required=True)

    # render
    s_re = sub.add_parser("render", help="draw a result file as SVG")
    s_re.add_argument("--result", type=Path, required=True)
    s_re.add_argument("--edges", type=Path)
    s_re.add_argument("--out", type=Path, required=True)
    s_re.add_argument(
        "--color-by", choices=["potential", "cluster"], default="cluster"
    )
    s_re.add_argument(
        "--edge-style", choices=["none", "graph", "forest", "both"], default="both"
    )
    s_re.add_argument("--radius", type=float, default=3.0)
    return parser


COMMANDS = {
    "cluster": run_cluster,
    "sweep": run_sweep,
    "graph": run_graph,
    "gen": run_gen,
    "render": run_render,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)

    try:
        return COMMANDS[args.cmd](args)
    except InvalidParameter as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ForestInvariantError, OSError) as e:
        logger.error("Command failed", extra={"cmd": args.cmd, "error": str(e)})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
