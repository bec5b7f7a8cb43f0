"""
Configuration Loader
Experiment config loading with validation and environment variable expansion
"""

import json
import os
import yaml
import logging
from pathlib import Path
from typing import Dict, Any

from .validation import ConfigValidationError, validate_experiment_config

logger = logging.getLogger(__name__)

YAML_SUFFIXES = {".yaml", ".yml"}


class ConfigLoader:
    """Experiment config loader for JSON documents, with YAML accepted by suffix"""

    def load_config(self, config_path: str) -> Dict[str, Any]:
        """Load and validate configuration from file"""
        logger.info(f"Loading configuration from: {config_path}")

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                # YAML 1.1 reads exponent literals such as 5e-2 as strings
                if Path(config_path).suffix.lower() in YAML_SUFFIXES:
                    config = yaml.safe_load(f)
                else:
                    config = json.load(f)

            config = self._expand_env_vars(config)
            self._validate_config(config)

            logger.info("Configuration loaded and validated successfully")
            return config

        except FileNotFoundError:
            logger.error(f"Configuration file not found: {config_path}")
            raise
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in configuration: {e}")
            raise
        except yaml.YAMLError as e:
            logger.error(f"Invalid YAML in configuration: {e}")
            raise

    def _expand_env_vars(self, config: Any) -> Any:
        """Recursively expand environment variables in configuration"""
        if isinstance(config, str):
            return os.path.expandvars(config)
        elif isinstance(config, dict):
            return {k: self._expand_env_vars(v) for k, v in config.items()}
        elif isinstance(config, list):
            return [self._expand_env_vars(item) for item in config]
        else:
            return config

    def _validate_config(self, config: Any) -> None:
        """Validate configuration structure and required fields"""
        result = validate_experiment_config(config)

        if result['warnings']:
            warning_msg = "Configuration warnings:\n" + "\n".join(f"  - {w}" for w in result['warnings'])
            logger.warning(warning_msg)

        if not result['valid']:
            error = ConfigValidationError(result['errors'])
            logger.error(str(error))
            raise error
