"""
SVG figures of clustering results.

Output is a standalone document with a fixed attribute order and fixed
coordinate precision, so identical inputs give identical bytes.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd

from .contracts import RenderOptions
from .errors import DataError
from .geometry.graph import NeighborGraph

SVG_NS = "http://www.w3.org/2000/svg"

# Qualitative palette for clusters, cycled when there are more clusters.
CLUSTER_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

# Ramp from lowest (densest) to highest potential.
POTENTIAL_RAMP = (
    (68, 1, 84),
    (59, 82, 139),
    (33, 145, 140),
    (94, 201, 98),
    (253, 231, 37),
)

GRAPH_EDGE_COLOR = "#b0b0b0"
FOREST_EDGE_COLOR = "#303030"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ramp_color(t: float) -> str:
    stops = np.linspace(0.0, 1.0, len(POTENTIAL_RAMP))
    ramp = np.array(POTENTIAL_RAMP, dtype=float)
    rgb = [int(round(np.interp(t, stops, ramp[:, c]))) for c in range(3)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def point_colors(frame: pd.DataFrame, color_by: str) -> List[str]:
    """Fill colour of every point, by cluster label or by potential."""
    if color_by == "cluster":
        size = len(CLUSTER_PALETTE)
        return [CLUSTER_PALETTE[int(c) % size] for c in frame["cluster"]]
    values = frame["potential"].to_numpy(dtype=float)
    lo, hi = values.min(), values.max()
    span = hi - lo
    return [_ramp_color(0.0 if span == 0 else (v - lo) / span) for v in values]


class _Canvas:
    """Uniform data-to-pixel transform, y axis pointing up."""

    def __init__(self, xy: np.ndarray, options: RenderOptions):
        lo = xy.min(axis=0)
        hi = xy.max(axis=0)
        extent = hi - lo
        span = float(extent.max()) or 1.0
        inner_w = options.width - 2 * options.margin
        inner_h = options.height - 2 * options.margin
        self.scale = min(inner_w, inner_h) / span
        self.lo = lo
        self.offset = (
            options.margin + (inner_w - extent[0] * self.scale) / 2.0,
            options.margin + (inner_h - extent[1] * self.scale) / 2.0,
        )
        self.height = options.height

    def __call__(self, x: float, y: float) -> Tuple[float, float]:
        px = self.offset[0] + (x - self.lo[0]) * self.scale
        py = self.height - (self.offset[1] + (y - self.lo[1]) * self.scale)
        return px, py


def _line(parent: ET.Element, cls: str, a, b, stroke: str, width: str, **extra):
    attrs = {
        "class": cls,
        "x1": _fmt(a[0]),
        "y1": _fmt(a[1]),
        "x2": _fmt(b[0]),
        "y2": _fmt(b[1]),
        "stroke": stroke,
        "stroke-width": width,
    }
    attrs.update(extra)
    ET.SubElement(parent, "line", attrs)


def _arrow_marker(svg: ET.Element) -> None:
    defs = ET.SubElement(svg, "defs")
    marker = ET.SubElement(
        defs,
        "marker",
        {
            "id": "arrow",
            "viewBox": "0 0 10 10",
            "refX": "10",
            "refY": "5",
            "markerWidth": "6",
            "markerHeight": "6",
            "orient": "auto",
        },
    )
    ET.SubElement(
        marker, "path", {"d": "M 0 0 L 10 5 L 0 10 z", "fill": FOREST_EDGE_COLOR}
    )


def render_svg(
    frame: pd.DataFrame,
    edges: Optional[NeighborGraph | Iterable[Tuple[int, int]]] = None,
    options: Optional[RenderOptions] = None,
) -> str:
    """
    Draw a result table as an SVG document.

    Args:
        frame: Result table as returned by ``read_result_csv``
        edges: Optional proximity graph (or edge pairs) drawn as thin lines
        options: Canvas and style settings

    Returns:
        SVG document text

    Raises:
        DataError: If the table is empty or an edge names a missing point
    """
    options = options or RenderOptions()
    if frame.empty:
        raise DataError("nothing to render: result has no points")
    xy = frame[["x", "y"]].to_numpy(dtype=float)
    n = len(xy)
    canvas = _Canvas(xy, options)
    pixels = [canvas(x, y) for x, y in xy]

    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(options.width),
            "height": str(options.height),
            "viewBox": f"0 0 {options.width} {options.height}",
        },
    )
    _arrow_marker(svg)

    if edges is not None and options.edge_style in ("graph", "both"):
        pairs = edges.edges() if isinstance(edges, NeighborGraph) else list(edges)
        group = ET.SubElement(svg, "g", {"id": "graph-edges"})
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise DataError(f"edge ({i}, {j}) refers to a missing point")
            _line(group, "graph-edge", pixels[i], pixels[j], GRAPH_EDGE_COLOR, "0.5")

    if options.edge_style in ("forest", "both"):
        group = ET.SubElement(svg, "g", {"id": "forest-edges"})
        for child, parent in zip(frame["index"], frame["parent"]):
            if pd.isna(parent):
                continue
            if not (0 <= child < n and 0 <= parent < n):
                raise DataError(f"link {child} -> {parent} refers to a missing point")
            _line(
                group,
                "forest-edge",
                pixels[int(child)],
                pixels[int(parent)],
                FOREST_EDGE_COLOR,
                "1",
                **{"marker-end": "url(#arrow)"},
            )

    group = ET.SubElement(svg, "g", {"id": "points"})
    for (px, py), fill in zip(pixels, point_colors(frame, options.color_by)):
        ET.SubElement(
            group,
            "circle",
            {
                "class": "point",
                "cx": _fmt(px),
                "cy": _fmt(py),
                "r": _fmt(options.point_radius),
                "fill": fill,
            },
        )

    body = ET.tostring(svg, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
