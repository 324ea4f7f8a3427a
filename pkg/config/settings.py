"""
Configuration management with JSON persistence.
User settings live in ~/.lapint/config.json (or $LAPINT_CONFIG) and are
merged over the defaults below; a few environment variables win over both.
"""

import json
import os

from dotenv import load_dotenv

from utils.logger import logger

DEFAULT_CONFIG = {
    "spectrum": {
        "zero_tolerance": 1e-9,
        "group_tolerance": 1e-6,
        "residual_tolerance": 1e-6,
        "numeric_hints": True
    },
    "limits": {
        "max_n_combinatorics": 20,
        "max_n_spectra": 14,
        "max_n_matroid": 20
    },
    "fuzz": {
        "n_min": 4,
        "n_max": 7,
        "rank_gaps": [2],
        "backends": ["gf2", "gf3", "graphic"],
        "trials": 200,
        "seed": 0,
        "jobs": 1
    },
    "search": {
        "n": 5,
        "trials": 2000,
        "seed": 0
    },
    "logging": {
        "level": "WARNING",
        "file_sink": False,
        "rotation": "10 MB"
    },
    "output": {
        "format": "json"
    }
}

CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".lapint")
CONFIG_PATH = os.path.join(CONFIG_DIR, "config.json")


def default_config_path():
    return os.getenv("LAPINT_CONFIG") or CONFIG_PATH


class Settings:
    """Manages lapint configuration with JSON file persistence."""

    def __init__(self, path=None, use_env=True):
        self.path = path or default_config_path()
        self._config = {}
        self.load()
        if use_env:
            load_dotenv()
            self._apply_env()

    def load(self):
        """Load config from disk, merging with defaults for any missing keys."""
        if os.path.exists(self.path):
            try:
                with open(self.path, "r") as f:
                    saved = json.load(f)
                self._config = self._deep_merge(DEFAULT_CONFIG, saved)
                logger.debug(f"Configuration loaded from {self.path}")
            except (json.JSONDecodeError, IOError) as e:
                logger.warning(f"Config load failed ({e}), using defaults.")
                self._config = json.loads(json.dumps(DEFAULT_CONFIG))
        else:
            self._config = json.loads(json.dumps(DEFAULT_CONFIG))

    def _apply_env(self):
        max_n = os.getenv("LAPINT_MAX_N")
        if max_n:
            try:
                value = int(max_n)
            except ValueError:
                logger.warning(f"Ignoring LAPINT_MAX_N={max_n!r}: not an integer")
            else:
                self._config["limits"]["max_n_combinatorics"] = value
                self._config["limits"]["max_n_spectra"] = value
        level = os.getenv("LAPINT_LOG_LEVEL")
        if level:
            self._config["logging"]["level"] = level.upper()

    def save(self):
        """Persist current config to disk."""
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        try:
            with open(self.path, "w") as f:
                json.dump(self._config, f, indent=2)
        except IOError as e:
            logger.error(f"Failed to save config: {e}")

    def get(self, section, key=None):
        """Get a config value. If key is None, returns the entire section."""
        if key is None:
            return self._config.get(section, {})
        return self._config.get(section, {}).get(key)

    def set(self, section, key, value):
        """Set a config value and persist to disk."""
        if section not in self._config:
            self._config[section] = {}
        self._config[section][key] = value
        self.save()

    def tolerances(self):
        """Keyword arguments for the spectrum and recursion functions."""
        section = self.get("spectrum")
        return {
            "tolerance": section.get("residual_tolerance"),
            "zero_tolerance": section.get("zero_tolerance"),
            "group_tolerance": section.get("group_tolerance"),
        }

    @staticmethod
    def _deep_merge(base, override):
        """Recursively merge override into base, keeping base keys as defaults."""
        result = json.loads(json.dumps(base))
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = Settings._deep_merge(result[key], value)
            else:
                result[key] = value
        return result
