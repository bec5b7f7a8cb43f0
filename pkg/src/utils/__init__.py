"""
Utility Functions
Config loading, validation and logging helpers
"""

from .config import ConfigLoader
from .logging import setup_logging, get_logger, timer_decorator
from .validation import (
    ConfigValidationError,
    SCHEMA_VERSION,
    SETTING_ALGORITHMS,
    validate_experiment_config,
)

__all__ = [
    'ConfigLoader', 'setup_logging', 'get_logger', 'timer_decorator',
    'ConfigValidationError', 'SCHEMA_VERSION', 'SETTING_ALGORITHMS',
    'validate_experiment_config',
]
