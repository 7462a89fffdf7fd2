"""
Configuration - defaults, JSON config file and HIGTOOL_* environment overrides
"""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Default configuration
DEFAULT_CONFIG = {
    "max_cosets": 1000000,
    "strategy": "hlt",
    "budget": 10000000,
    "samples": 10000,
    "max_len": 40,
    "seed": 20160401,
    "workers": 1,
    "max_witnesses": 5,
    "compaction_ratio": 0.5,
    "log_level": "INFO",
}

CONFIG_FILE = Path("higtool_config.json")
ENV_PREFIX = "HIGTOOL_"


@dataclass
class ToolkitConfig:
    """Typed view of the merged configuration"""
    max_cosets: int = 1000000
    strategy: str = "hlt"
    budget: int = 10000000
    samples: int = 10000
    max_len: int = 40
    seed: int = 20160401
    workers: int = 1
    max_witnesses: int = 5
    compaction_ratio: float = 0.5
    log_level: str = "INFO"

    @classmethod
    def from_mapping(cls, values: Dict[str, Any]) -> "ToolkitConfig":
        return cls(
            max_cosets=int(values["max_cosets"]),
            strategy=str(values["strategy"]).lower(),
            budget=int(values["budget"]),
            samples=int(values["samples"]),
            max_len=int(values["max_len"]),
            seed=int(values["seed"]),
            workers=int(values["workers"]),
            max_witnesses=int(values["max_witnesses"]),
            compaction_ratio=float(values["compaction_ratio"]),
            log_level=str(values["log_level"]).upper(),
        )


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """Load configuration from file, merging missing keys from defaults.

    A missing file is not an error; unlike an interactive setup, nothing is
    written back.
    """
    path = Path(path) if path else CONFIG_FILE
    config = DEFAULT_CONFIG.copy()
    if path.exists():
        try:
            with open(path, "r") as f:
                loaded = json.load(f)
            unknown = sorted(set(loaded) - set(DEFAULT_CONFIG))
            if unknown:
                logger.warning("Ignoring unknown config keys in %s: %s", path, ", ".join(unknown))
            config.update({k: v for k, v in loaded.items() if k in DEFAULT_CONFIG})
        except (OSError, ValueError) as e:
            logger.error("Error loading config %s: %s", path, e)
    return config


def save_config(config: Dict[str, Any], path: Optional[Path] = None) -> bool:
    """Save configuration to file"""
    path = Path(path) if path else CONFIG_FILE
    try:
        with open(path, "w") as f:
            json.dump(config, f, indent=2)
        return True
    except OSError as e:
        logger.error("Error saving config %s: %s", path, e)
        return False


def apply_environment(config: Dict[str, Any]) -> Dict[str, Any]:
    """Override values from HIGTOOL_<KEY> variables, after loading any .env file"""
    load_dotenv()
    merged = dict(config)
    for key in DEFAULT_CONFIG:
        value = os.getenv(ENV_PREFIX + key.upper())
        if value is not None:
            merged[key] = value
    return merged


def get_config(path: Optional[Path] = None) -> ToolkitConfig:
    return ToolkitConfig.from_mapping(apply_environment(load_config(path)))
