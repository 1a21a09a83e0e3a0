"""
Configuration module for itcluster.
Loads environment variables and dataset presets.
"""

import os
from pathlib import Path
from typing import Any, Dict

import yaml

from .contracts import MixtureSpec
from .errors import InvalidParameter
from .logging_utils import get_logger

logger = get_logger(__name__)

# Mixture presets shipped with the package; override with ITC_MIXTURES_FILE
MIXTURES_FILE = Path(
    os.getenv("ITC_MIXTURES_FILE", str(Path(__file__).with_name("mixtures.yml")))
)

# Output file constants
RESULT_COLUMNS = ("index", "x", "y", "potential", "parent", "root", "cluster")
SWEEP_COLUMNS = ("sigma", "clusters", "ari", "nmi")
FLOAT_FORMAT = "%.17g"


def default_workers() -> int:
    """Worker count from ``ITC_WORKERS``; falls back to 1 on bad values."""
    raw = os.getenv("ITC_WORKERS")
    if raw is None:
        return 1
    try:
        workers = int(raw)
    except ValueError:
        workers = 0
    if workers < 1:
        logger.warning("Ignoring invalid ITC_WORKERS", extra={"value": raw})
        return 1
    return workers


def load_mixture_file(path: Path) -> Dict[str, Any]:
    """
    Read a YAML file of named mixture presets.

    Args:
        path: YAML file mapping preset names to mixture specs

    Returns:
        Mapping of preset name to raw preset dictionary
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            presets = yaml.safe_load(f) or {}
    except OSError as e:
        raise InvalidParameter(f"cannot read mixture presets {path}: {e}") from e
    if not isinstance(presets, dict):
        raise InvalidParameter(f"mixture presets in {path} must be a mapping")
    return presets


def get_mixture_preset(name: str, path: Path | None = None) -> MixtureSpec:
    """
    Get a named mixture specification from the presets file.

    Args:
        name: Preset key (e.g. "two-gaussian")
        path: Optional presets file; defaults to MIXTURES_FILE

    Returns:
        Validated MixtureSpec
    """
    presets = load_mixture_file(path or MIXTURES_FILE)
    if name not in presets:
        raise InvalidParameter(
            f"unknown mixture preset {name!r}; known: {sorted(presets)}"
        )
    try:
        return MixtureSpec.model_validate(presets[name])
    except ValueError as e:
        raise InvalidParameter(f"invalid mixture preset {name!r}: {e}") from e


def load_mixture_spec(path: Path) -> MixtureSpec:
    """Read a single mixture specification from a YAML file."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            raw = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise InvalidParameter(f"cannot read mixture spec {path}: {e}") from e
    try:
        return MixtureSpec.model_validate(raw)
    except ValueError as e:
        raise InvalidParameter(f"invalid mixture spec in {path}: {e}") from e
