"""Configuration management for the blocked-plan toolkit."""

import logging
import os
from functools import lru_cache
from typing import Optional, Dict, Any
from pathlib import Path
from dotenv import load_dotenv


VALID_LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
VALID_MODELS = ['mains', 'mains+2fi']


class ConfigurationError(Exception):
    """Custom exception for configuration-related errors."""
    pass


class ConfigurationManager:
    """Manages configuration settings and environment variables."""

    def __init__(self, env_file: Optional[str] = None):
        """Initialize configuration manager and load environment variables.

        Args:
            env_file: Optional path to .env file. If None, uses default .env
        """
        self._load_environment(env_file)
        self._validate_required_config()

    def _load_environment(self, env_file: Optional[str] = None) -> None:
        """Load environment variables from .env file."""
        if env_file:
            env_path = Path(env_file)
            if not env_path.exists():
                raise ConfigurationError(f"Environment file not found: {env_file}")
            load_dotenv(env_path)
        else:
            load_dotenv()

    def _validate_required_config(self) -> None:
        """Reject settings the library cannot run with."""
        results = self.validate_all_config()
        invalid = [name for name, ok in results.items() if not ok]
        if invalid:
            raise ConfigurationError(
                f"Invalid configuration values: {', '.join(invalid)}. "
                "See .env.example for reference."
            )

    @staticmethod
    def _int_setting(name: str, default: int) -> int:
        try:
            return int(os.getenv(name, str(default)))
        except ValueError:
            return default

    @property
    def log_level(self) -> str:
        """Get logging level."""
        return os.getenv('LOG_LEVEL', 'INFO').upper()

    @property
    def max_member_dim(self) -> int:
        """Largest subspace dimension whose members may be listed."""
        return self._int_setting('MAX_MEMBER_DIM', 12)

    @property
    def max_expansion_dim(self) -> int:
        """Largest subspace dimension accepted by expand."""
        return self._int_setting('MAX_EXPANSION_DIM', 8)

    @property
    def max_search_candidates(self) -> int:
        """Largest number of subspaces a search may score."""
        return self._int_setting('MAX_SEARCH_CANDIDATES', 1_000_000)

    @property
    def search_workers(self) -> int:
        """Number of worker processes used by search_best."""
        return self._int_setting('SEARCH_WORKERS', 1)

    @property
    def enable_timing_logging(self) -> bool:
        """Get whether verify-paper logs the time spent on each claim."""
        return os.getenv('ENABLE_TIMING_LOGGING', 'false').lower() == 'true'

    @property
    def default_model(self) -> str:
        """Effect model used when the CLI gets no --model flag."""
        return os.getenv('DEFAULT_MODEL', 'mains+2fi')

    def get_all_config(self) -> Dict[str, Any]:
        """Get all configuration values as a dictionary."""
        return {
            'log_level': self.log_level,
            'max_member_dim': self.max_member_dim,
            'max_expansion_dim': self.max_expansion_dim,
            'max_search_candidates': self.max_search_candidates,
            'search_workers': self.search_workers,
            'enable_timing_logging': self.enable_timing_logging,
            'default_model': self.default_model,
        }

    def validate_all_config(self) -> Dict[str, bool]:
        """Validate all configuration parameters.

        Returns:
            Dictionary with validation results for each parameter
        """
        validation_results = {}

        validation_results['max_member_dim'] = self.max_member_dim > 0
        validation_results['max_expansion_dim'] = self.max_expansion_dim > 0
        validation_results['max_search_candidates'] = self.max_search_candidates > 0
        validation_results['search_workers'] = self.search_workers > 0

        validation_results['log_level'] = self.log_level in VALID_LOG_LEVELS
        validation_results['default_model'] = self.default_model in VALID_MODELS

        return validation_results


@lru_cache(maxsize=1)
def get_config() -> ConfigurationManager:
    """Process-wide configuration loaded from the default .env file."""
    return ConfigurationManager()


def configure_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr at the configured level."""
    logging.basicConfig(
        level=(level or get_config().log_level),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


def use_env_file(env_file: str) -> ConfigurationManager:
    """Load settings from `env_file` and make them the process-wide configuration."""
    manager = ConfigurationManager(env_file)
    get_config.cache_clear()
    return manager
