# qaffine/utils/configuration.py

"""
Configuration Module for qaffine

This module provides the Configuration class, which manages the settings of
the verification engine. Settings come from built-in defaults, an optional
JSON file and QAFFINE_* environment variables, in that order of precedence.
"""

import json
import logging
from fractions import Fraction
import os
from typing import Any, Dict, List, Optional

from qaffine.core.exceptions import ConfigurationError

# Configure the logger for this module
logger = logging.getLogger(__name__)

ENV_PREFIX = "QAFFINE_"


class Configuration:
    """
    Manages configuration settings for qaffine.
    """
    _config: Dict[str, Any] = {}
    _default_config: Dict[str, Any] = {
        'cutoff': 8,
        'format': 'text',
        'seed': 0,
        'logging_level': 'WARNING',
        'log_file': None,
        'config_file_path': 'qaffine.json',
        'crossing_grid': [-3, 3],
        'yangian_exponent_bound': 6,
    }

    @classmethod
    def load(cls, config_file_path: Optional[str] = None) -> None:
        """
        Loads configuration settings from a JSON file and environment variables,
        on top of the default settings.

        Args:
            config_file_path (Optional[str]): Path to the configuration file.
                If None, uses the default path from the default configuration.

        Raises:
            ConfigurationError: If the file is malformed or an environment
                value cannot be converted to the type of its default.
        """
        cls._config = cls._default_config.copy()
        logger.debug("Default configuration loaded.")

        file_path = config_file_path or cls._config.get('config_file_path')
        if file_path and os.path.exists(file_path):
            try:
                with open(file_path, 'r', encoding='utf-8') as f:
                    file_config = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                logger.error(f"Failed to load configuration file '{file_path}': {e}")
                raise ConfigurationError(f"cannot read configuration file '{file_path}': {e}") from e
            if not isinstance(file_config, dict):
                raise ConfigurationError(f"configuration file '{file_path}' must hold a JSON object")
            for key, value in file_config.items():
                cls._config[key] = cls._coerce(key, value)
            logger.debug(f"Configuration loaded from file '{file_path}'.")
        elif config_file_path:
            logger.error(f"Configuration file '{file_path}' not found.")
            raise ConfigurationError(f"configuration file '{file_path}' not found")
        else:
            logger.debug(f"Configuration file '{file_path}' not found. Using defaults and environment variables.")

        for key in list(cls._config.keys()):
            env_value = os.environ.get(ENV_PREFIX + key.upper())
            if env_value is not None:
                cls._config[key] = cls._coerce(key, env_value)
                logger.debug(f"Configuration '{key}' set from environment variable.")

    @classmethod
    def _coerce(cls, key: str, value: Any) -> Any:
        """Converts a value to the type of the key's default."""
        default = cls._default_config.get(key)
        if default is None or value is None:
            return value
        try:
            if isinstance(default, bool):
                if isinstance(value, str):
                    return value.strip().lower() in ('1', 'true', 'yes', 'on')
                return bool(value)
            if isinstance(default, int):
                return int(value)
            if isinstance(default, list):
                if isinstance(value, str):
                    value = [part for part in value.split(',') if part.strip()]
                return [type(default[0])(v) for v in value] if default else list(value)
            return type(default)(value)
        except (TypeError, ValueError) as e:
            logger.error(f"Invalid value '{value}' for configuration '{key}': {e}")
            raise ConfigurationError(f"invalid value '{value}' for '{key}'") from e

    @classmethod
    def get(cls, key: str, default: Any = None) -> Any:
        """
        Retrieves a configuration value by key.

        Args:
            key (str): The configuration key.
            default (Any): The default value if the key is not found.

        Returns:
            Any: The configuration value.
        """
        if not cls._config:
            return cls._default_config.get(key, default)
        return cls._config.get(key, default)

    @classmethod
    def set(cls, key: str, value: Any) -> None:
        """
        Sets a configuration value.

        Args:
            key (str): The configuration key.
            value (Any): The value to set.
        """
        if not cls._config:
            cls._config = cls._default_config.copy()
        cls._config[key] = value
        logger.debug(f"Configuration '{key}' set to '{value}'.")

    @classmethod
    def get_all(cls) -> Dict[str, Any]:
        """
        Retrieves all configuration settings.

        Returns:
            Dict[str, Any]: All configuration settings.
        """
        if not cls._config:
            return cls._default_config.copy()
        return cls._config.copy()

    @classmethod
    def crossing_values(cls) -> List:
        """Half-integer search grid derived from the 'crossing_grid' bounds."""
        lo, hi = cls.get('crossing_grid')
        values = []
        current = Fraction(lo)
        while current <= hi:
            values.append(current)
            current += Fraction(1, 2)
        return values
