"""Configuration loading for drindex.

Settings come from ``config/drindex.yaml`` (or the file named by
``DRINDEX_CONFIG``), then environment variables, then CLI flags.
A ``.env`` file in the working directory is honoured via python-dotenv.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

from src.utils.errors import ArgumentError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent.parent / "config" / "drindex.yaml"

TRUTHY = {"1", "true", "yes", "on"}


@dataclass
class BenchSettings:
    """Workload defaults for ``drindex bench``."""

    operations: int = 1000
    patterns: int = 100
    pattern_length: int = 100
    seed: int = 0


@dataclass
class DrIndexConfig:
    """Resolved runtime settings."""

    fanout: int = 32  # B-tree node capacity
    block_size: int = 4096  # bytes per insert_string block during build
    oracle_cap: int = 100_000  # largest text the oracle will process
    debug_trace: bool = False
    debug_trace_cap: int = 64  # largest text replayed in debug trace mode
    log_level: str = "INFO"
    bench: BenchSettings = field(default_factory=BenchSettings)


def _as_int(section: dict[str, Any], key: str, default: int, minimum: int = 0) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ArgumentError(f"config key '{key}' must be an integer >= {minimum}, got {value!r}")
    return value


def load_config(path: Path | str | None = None) -> DrIndexConfig:
    """Load settings from YAML and the environment.

    Args:
        path: Optional explicit YAML path. Falls back to ``DRINDEX_CONFIG``
            and then to the bundled ``config/drindex.yaml``.

    Returns:
        Populated DrIndexConfig (defaults for anything missing)

    Raises:
        ArgumentError: If a setting has the wrong type
    """
    load_dotenv()

    config_path = Path(path or os.getenv("DRINDEX_CONFIG") or DEFAULT_CONFIG_PATH)
    raw: dict[str, Any] = {}
    if config_path.exists():
        with open(config_path) as f:
            raw = yaml.safe_load(f) or {}
        logger.debug(f"Loaded configuration from {config_path}")
    else:
        logger.debug(f"No configuration at {config_path}, using defaults")

    index_section = raw.get("index", {}) or {}
    oracle_section = raw.get("oracle", {}) or {}
    bench_section = raw.get("bench", {}) or {}
    logging_section = raw.get("logging", {}) or {}

    config = DrIndexConfig(
        fanout=_as_int(index_section, "fanout", 32, minimum=4),
        block_size=_as_int(index_section, "block_size", 4096, minimum=1),
        oracle_cap=_as_int(oracle_section, "cap", 100_000, minimum=1),
        debug_trace=bool(oracle_section.get("debug_trace", False)),
        debug_trace_cap=_as_int(oracle_section, "debug_trace_cap", 64, minimum=1),
        log_level=str(logging_section.get("level", "INFO")).upper(),
        bench=BenchSettings(
            operations=_as_int(bench_section, "operations", 1000),
            patterns=_as_int(bench_section, "patterns", 100),
            pattern_length=_as_int(bench_section, "pattern_length", 100, minimum=1),
            seed=_as_int(bench_section, "seed", 0),
        ),
    )

    if os.getenv("DRINDEX_DEBUG_TRACE") is not None:
        config.debug_trace = os.getenv("DRINDEX_DEBUG_TRACE", "").strip().lower() in TRUTHY
    if os.getenv("DRINDEX_LOG_LEVEL"):
        config.log_level = os.getenv("DRINDEX_LOG_LEVEL", "INFO").upper()

    return config


def debug_trace_enabled() -> bool:
    """Check the environment switch for oracle replay cross-checking."""
    return os.getenv("DRINDEX_DEBUG_TRACE", "").strip().lower() in TRUTHY
