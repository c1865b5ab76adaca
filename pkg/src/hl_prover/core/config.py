import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .exceptions import ConfigurationError


class ConfigManager:
    """Manages configuration for hl-prover"""

    def __init__(self, config_path: Optional[Path] = None, load_env: bool = True):
        if load_env:
            # .env may carry HL_PROVER_CONFIG / HL_PROVER_LOG_LEVEL
            load_dotenv(Path.cwd() / ".env", override=False)
        self.config_path = Path(config_path) if config_path else self._get_default_config_path()
        self._config = self._load_config()

    def _get_default_config_path(self) -> Path:
        """Get default configuration path"""
        if env_path := os.getenv("HL_PROVER_CONFIG"):
            return Path(env_path)

        locations = [
            Path.cwd() / "hl-prover.yaml",
            Path.cwd() / ".hl-prover" / "config.yaml",
            Path.home() / ".hl-prover" / "config.yaml",
        ]

        for location in locations:
            if location.exists():
                return location

        return Path.home() / ".hl-prover" / "config.yaml"

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file, merged over the defaults"""
        config = self._get_default_config()
        if level := os.getenv("HL_PROVER_LOG_LEVEL"):
            config["general"]["log_level"] = level.upper()

        if not self.config_path.exists():
            return config

        with open(self.config_path, "r", encoding="utf-8") as f:
            if self.config_path.suffix in (".yaml", ".yml"):
                loaded = yaml.safe_load(f) or {}
            elif self.config_path.suffix == ".json":
                loaded = json.load(f)
            else:
                raise ConfigurationError(f"Unsupported config format: {self.config_path.suffix}")

        if not isinstance(loaded, dict):
            raise ConfigurationError(f"Config root must be a mapping: {self.config_path}")
        return _deep_merge(config, loaded)

    def _get_default_config(self) -> Dict[str, Any]:
        """Get default configuration"""
        return {
            "general": {
                "log_level": "INFO",
                "max_workers": 4,
            },
            "resolver": {
                "max_depth": 32,
                "strategy": "backward",  # backward, bidir
                "cache": True,
                "condition_depth": 8,
                "max_atoms": 100000,
            },
            "simp": {
                "fuel": 10000,
            },
            "ring": {
                "exponent_limit": 65536,
                "semiring": False,
            },
            "linarith": {
                "var_limit": 12,
            },
            "decide": {
                "exponent_limit": 65536,
            },
            "lint": {
                "strict": False,
                "checks": ["unused_hypothesis", "malformed_name", "missing_doc", "simp_loop_risk"],
            },
            "bench": {
                "strategies": ["backward", "bidir"],
                "cache": False,
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value using dot notation"""
        keys = key.split(".")
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """Set configuration value using dot notation"""
        keys = key.split(".")
        config = self._config

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def save(self) -> None:
        """Save configuration to file"""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        with open(self.config_path, "w", encoding="utf-8") as f:
            if self.config_path.suffix == ".json":
                json.dump(self._config, f, indent=2)
            else:
                yaml.dump(self._config, f, default_flow_style=False)

    def get_module_config(self, module_name: str) -> Dict[str, Any]:
        """Get configuration for a specific engine module"""
        return copy.deepcopy(self.get(module_name, {}))


def _deep_merge(base: Dict[str, Any], updates: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged
