"""Point, result, sweep and edge-list files.

Every writer goes through :func:`atomic_write_text`, so a failed run never
leaves a partial file behind.
"""

from __future__ import annotations

import io
import json
import math
import os
from pathlib import Path
import tempfile
from typing import TYPE_CHECKING, Any, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import FLOAT_FORMAT, RESULT_COLUMNS, SWEEP_COLUMNS
from ..contracts import SweepRow
from ..errors import DataError
from ..geometry.graph import NeighborGraph, edge_list_text, parse_edge_list
from ..logging_utils import get_logger

if TYPE_CHECKING:
    from .pipeline import ClusterResult

logger = get_logger(__name__)

_LABEL_COLUMNS = ("label", "cluster", "truth")


def atomic_write_text(path: Path | str, text: str) -> Path:
    """Write ``text`` to a temporary sibling of ``path`` and rename it over."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(
        prefix=f".{path.name}.", suffix=".tmp", dir=path.parent
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("Wrote file", extra={"path": str(path), "bytes": len(text)})
    return path


def _read_text(path: Path | str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"cannot read {path}: {e}") from e


def _tokens(line: str) -> List[str]:
    if "," in line:
        return [t.strip() for t in line.split(",")]
    return line.split()


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _parse_float(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"line {lineno}: {token!r} is not a number") from None
    if not math.isfinite(value):
        raise DataError(f"line {lineno}: non-finite value {token!r}")
    return value


def _parse_label(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        pass
    value = _parse_float(token, lineno)
    if not value.is_integer():
        raise DataError(f"line {lineno}: label {token!r} is not an integer")
    return int(value)


def load_points_csv(path: Path | str) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Read a point file.

    Rows are ``x y [label]`` separated by commas or whitespace; blank lines
    and ``#`` comments are skipped. A first row that is not numeric is a
    header naming the ``x``, ``y`` and optional ``label``/``cluster``/``truth``
    columns, which also lets result files be read back.

    Returns:
        ``(points, labels)``; labels is None when the file has no label column

    Raises:
        DataError: On unreadable files or malformed rows (1-based line number)
    """
    text = _read_text(path)
    columns: Optional[Tuple[int, int, Optional[int]]] = None
    width: Optional[int] = None
    xy: List[Tuple[float, float]] = []
    labels: List[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = _tokens(line)

        if columns is None:
            numeric = len(tokens) >= 2 and all(map(_is_number, tokens[:2]))
            if not numeric:
                names = [t.lower() for t in tokens]
                if "x" not in names or "y" not in names:
                    raise DataError(f"line {lineno}: header needs x and y columns")
                label_col = next(
                    (names.index(c) for c in _LABEL_COLUMNS if c in names), None
                )
                columns = (names.index("x"), names.index("y"), label_col)
                width = len(tokens)
                continue
            if len(tokens) not in (2, 3):
                raise DataError(
                    f"line {lineno}: expected 2 or 3 columns, got {len(tokens)}"
                )
            columns = (0, 1, 2 if len(tokens) == 3 else None)
            width = len(tokens)

        if len(tokens) != width:
            raise DataError(
                f"line {lineno}: expected {width} columns, got {len(tokens)}"
            )
        xcol, ycol, label_col = columns
        xy.append(
            (_parse_float(tokens[xcol], lineno), _parse_float(tokens[ycol], lineno))
        )
        if label_col is not None:
            labels.append(_parse_label(tokens[label_col], lineno))

    if not xy:
        raise DataError(f"{path}: no points")
    points = np.array(xy, dtype=float)
    label_array = np.array(labels, dtype=np.int64) if columns[2] is not None else None
    logger.info(
        "Loaded points",
        extra={
            "path": str(path),
            "points": len(points),
            "labels": label_array is not None,
        },
    )
    return points, label_array


def _frame_csv(frame: pd.DataFrame, header: bool = True) -> str:
    buf = io.StringIO()
    frame.to_csv(
        buf,
        index=False,
        header=header,
        float_format=FLOAT_FORMAT,
        na_rep="",
        lineterminator="\n",
    )
    return buf.getvalue()


def write_points_csv(
    path: Path | str, points: np.ndarray, labels: Optional[Sequence[int]] = None
) -> Path:
    """Write a ``# x,y[,label]`` point file at full float precision."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    frame = pd.DataFrame({"x": points[:, 0], "y": points[:, 1]})
    header = "# x,y"
    if labels is not None:
        frame["label"] = np.asarray(labels, dtype=np.int64)
        header += ",label"
    return atomic_write_text(path, header + "\n" + _frame_csv(frame, header=False))


def result_frame(result: "ClusterResult") -> pd.DataFrame:
    """Per-point result table with the ``RESULT_COLUMNS`` schema."""
    parents = [None if p < 0 else int(p) for p in result.parents]
    frame = pd.DataFrame(
        {
            "index": np.arange(result.n, dtype=np.int64),
            "x": result.points[:, 0],
            "y": result.points[:, 1],
            "potential": result.potentials,
            "parent": pd.array(parents, dtype="Int64"),
            "root": result.roots,
            "cluster": result.labels,
        }
    )
    return frame[list(RESULT_COLUMNS)]


def write_result_csv(path: Path | str, result: "ClusterResult") -> Path:
    """Write a clustering result; the parent cell is empty for roots."""
    return atomic_write_text(path, _frame_csv(result_frame(result)))


def read_result_csv(path: Path | str) -> pd.DataFrame:
    """Read a result file written by :func:`write_result_csv`."""
    try:
        frame = pd.read_csv(
            path, dtype={"parent": "Int64"}, float_precision="round_trip"
        )
    except (OSError, ValueError, pd.errors.ParserError) as e:
        raise DataError(f"cannot read result file {path}: {e}") from e
    if tuple(frame.columns) != RESULT_COLUMNS:
        raise DataError(
            f"{path}: expected columns {list(RESULT_COLUMNS)}, "
            f"got {list(frame.columns)}"
        )
    return frame


def write_sweep_csv(path: Path | str, rows: Sequence[SweepRow]) -> Path:
    """Write sweep rows; ari and nmi cells stay empty without ground truth."""
    frame = pd.DataFrame(
        {
            "sigma": [r.sigma for r in rows],
            "clusters": np.array([r.cluster_count for r in rows], dtype=np.int64),
            "ari": [np.nan if r.ari is None else r.ari for r in rows],
            "nmi": [np.nan if r.nmi is None else r.nmi for r in rows],
        }
    )
    return atomic_write_text(path, _frame_csv(frame[list(SWEEP_COLUMNS)]))


def write_edge_list(path: Path | str, graph: NeighborGraph) -> Path:
    return atomic_write_text(path, edge_list_text(graph))


def read_edge_list(path: Path | str, n: Optional[int] = None) -> NeighborGraph:
    return parse_edge_list(_read_text(path), n=n)


def write_json(path: Path | str, payload: Any) -> Path:
    return atomic_write_text(path, json.dumps(payload, indent=2) + "\n")
