"""
Freiheit Configuration

Loads settings from ~/.freiheit/config.yaml with environment variable overrides.
Every tolerance, search bound and seed used by the certifiers lives here so a
report can record exactly what it was computed with.
"""

import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

try:
    import yaml
    HAS_YAML = True
except ImportError:
    HAS_YAML = False

CONFIG_DIR = Path.home() / ".freiheit"
CONFIG_FILE = CONFIG_DIR / "config.yaml"


@dataclass
class ToleranceConfig:
    """Floating-point tolerances for the numeric certifiers."""

    numeric: float = 1e-9
    schottky_margin: float = 1e-6
    degenerate: float = 1e-12
    identity: float = 1e-6


@dataclass
class MagnusConfig:
    """Bounds for the exact free-product certification."""

    word_length: int = 3
    syllable_depth: int = 3
    exponent_bound: int = 1
    candidate_pool: int = 256


@dataclass
class HyperbolicConfig:
    """Basepoint search settings."""

    restarts: int = 100
    max_iter: int = 2000
    spread: float = 1.0


@dataclass
class GroupConfig:
    """Limits for the exponential free-group searches."""

    max_subset_size: int = 12
    max_nielsen_depth: int = 4
    relation_length: int = 4
    obstruction_samples: int = 16
    max_generating_sets: int = 200000


@dataclass
class RunConfig:
    """Reproducibility and parallelism."""

    seed: int = 0
    workers: int = 1
    log_level: str = "WARNING"


@dataclass
class FreiheitConfig:
    """
    Complete freiheit configuration.

    Loaded from ~/.freiheit/config.yaml with environment variable overrides.
    """

    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    magnus: MagnusConfig = field(default_factory=MagnusConfig)
    hyperbolic: HyperbolicConfig = field(default_factory=HyperbolicConfig)
    groups: GroupConfig = field(default_factory=GroupConfig)
    run: RunConfig = field(default_factory=RunConfig)

    # Convenience accessors
    @property
    def tol(self) -> float:
        return self.tolerances.numeric

    @property
    def seed(self) -> int:
        return self.run.seed

    def to_dict(self) -> dict:
        """Convert to dictionary for report provenance."""
        return asdict(self)


_SECTIONS = {
    "tolerances": ToleranceConfig,
    "magnus": MagnusConfig,
    "hyperbolic": HyperbolicConfig,
    "groups": GroupConfig,
    "run": RunConfig,
}


def _parse_section(data: dict, name: str, section_cls: type) -> Any:
    """Parse one config section, ignoring unknown keys."""
    section_data = data.get(name) or {}
    known = section_cls.__dataclass_fields__
    values = {}
    for key, value in section_data.items():
        if key not in known:
            logger.warning(f"Ignoring unknown config key {name}.{key}")
            continue
        values[key] = type(getattr(section_cls(), key))(value)
    return section_cls(**values)


def config_from_dict(data: dict) -> FreiheitConfig:
    """Build a config from a nested dict (YAML file or report provenance)."""
    return FreiheitConfig(
        **{name: _parse_section(data, name, cls) for name, cls in _SECTIONS.items()}
    )


def load_config(config_path: Path | None = None) -> FreiheitConfig:
    """
    Load configuration from file with environment variable overrides.

    Args:
        config_path: Optional path to config file. Defaults to ~/.freiheit/config.yaml

    Returns:
        FreiheitConfig instance
    """
    config_file = config_path or CONFIG_FILE
    config = FreiheitConfig()

    if HAS_YAML and config_file.exists():
        try:
            with open(config_file) as f:
                data = yaml.safe_load(f) or {}
            config = config_from_dict(data)
        except yaml.YAMLError as e:
            logger.warning(f"Could not parse config file at {config_file}: {e}")
        except (TypeError, ValueError) as e:
            logger.warning(f"Invalid value in config file {config_file}: {e}")

    # Environment variable overrides
    if os.environ.get("FREIHEIT_SEED"):
        config.run.seed = int(os.environ["FREIHEIT_SEED"])

    if os.environ.get("FREIHEIT_TOL"):
        config.tolerances.numeric = float(os.environ["FREIHEIT_TOL"])

    if os.environ.get("FREIHEIT_WORKERS"):
        config.run.workers = int(os.environ["FREIHEIT_WORKERS"])

    if os.environ.get("FREIHEIT_LOG_LEVEL"):
        config.run.log_level = os.environ["FREIHEIT_LOG_LEVEL"].upper()

    return config


def save_config(config: FreiheitConfig, config_path: Path | None = None) -> None:
    """
    Save configuration to file.

    Args:
        config: FreiheitConfig instance to save
        config_path: Optional path to config file. Defaults to ~/.freiheit/config.yaml
    """
    if not HAS_YAML:
        raise RuntimeError("PyYAML not installed. Run: pip install pyyaml")

    config_file = config_path or CONFIG_FILE
    config_file.parent.mkdir(parents=True, exist_ok=True)

    with open(config_file, "w") as f:
        yaml.dump(config.to_dict(), f, default_flow_style=False, sort_keys=False)

    logger.info(f"Configuration saved to {config_file}")


# Cached config instance
_config: FreiheitConfig | None = None


def get_config() -> FreiheitConfig:
    """Get cached config instance, loading if needed."""
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reload_config() -> FreiheitConfig:
    """Force reload config from file."""
    global _config
    _config = load_config()
    return _config
