"""Unit tests for configuration management."""

import os
import tempfile
import unittest
from unittest.mock import patch

from src.config import (
    ConfigurationError,
    ConfigurationManager,
    get_config,
    use_env_file,
)


class TestConfigurationManager(unittest.TestCase):
    """Test cases for ConfigurationManager."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.env_path = os.path.join(self.temp_dir.name, '.env')

    def tearDown(self):
        """Clean up temporary files."""
        self.temp_dir.cleanup()
        get_config.cache_clear()

    def _write_env(self, text):
        with open(self.env_path, 'w') as f:
            f.write(text)

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        """Test default values when nothing is set."""
        config = ConfigurationManager()
        self.assertEqual(config.log_level, 'INFO')
        self.assertEqual(config.max_member_dim, 12)
        self.assertEqual(config.max_expansion_dim, 8)
        self.assertEqual(config.max_search_candidates, 1_000_000)
        self.assertEqual(config.search_workers, 1)
        self.assertFalse(config.enable_timing_logging)
        self.assertEqual(config.default_model, 'mains+2fi')

    @patch.dict(os.environ, {
        'LOG_LEVEL': 'debug',
        'MAX_EXPANSION_DIM': '3',
        'SEARCH_WORKERS': '4',
        'ENABLE_TIMING_LOGGING': 'TRUE',
        'DEFAULT_MODEL': 'mains',
    }, clear=True)
    def test_environment_overrides(self):
        """Test values read from the environment."""
        config = ConfigurationManager()
        self.assertEqual(config.log_level, 'DEBUG')
        self.assertEqual(config.max_expansion_dim, 3)
        self.assertEqual(config.search_workers, 4)
        self.assertTrue(config.enable_timing_logging)
        self.assertEqual(config.default_model, 'mains')

    @patch.dict(os.environ, {'MAX_MEMBER_DIM': 'lots'}, clear=True)
    def test_unparseable_integer_falls_back(self):
        """Test that a non-integer setting uses the default."""
        self.assertEqual(ConfigurationManager().max_member_dim, 12)

    @patch.dict(os.environ, {'DEFAULT_MODEL': 'cubic'}, clear=True)
    def test_invalid_model_rejected(self):
        """Test that an unknown default model raises ConfigurationError."""
        with self.assertRaises(ConfigurationError):
            ConfigurationManager()

    @patch.dict(os.environ, {'SEARCH_WORKERS': '0', 'LOG_LEVEL': 'LOUD'}, clear=True)
    def test_validate_all_config(self):
        """Test the per-setting validation results."""
        with self.assertRaises(ConfigurationError) as ctx:
            ConfigurationManager()
        self.assertIn('search_workers', str(ctx.exception))
        self.assertIn('log_level', str(ctx.exception))

    def test_missing_env_file(self):
        """Test that a missing env file raises ConfigurationError."""
        with self.assertRaises(ConfigurationError):
            ConfigurationManager(os.path.join(self.temp_dir.name, 'missing.env'))

    @patch.dict(os.environ, {}, clear=True)
    def test_env_file_loaded(self):
        """Test loading settings from an env file."""
        self._write_env("MAX_SEARCH_CANDIDATES=500\nDEFAULT_MODEL=mains\n")
        config = use_env_file(self.env_path)
        self.assertEqual(config.max_search_candidates, 500)
        self.assertEqual(get_config().default_model, 'mains')

    @patch.dict(os.environ, {}, clear=True)
    def test_get_all_config(self):
        """Test the full settings dictionary."""
        all_config = ConfigurationManager().get_all_config()
        self.assertEqual(set(all_config), {
            'log_level', 'max_member_dim', 'max_expansion_dim', 'max_search_candidates',
            'search_workers', 'enable_timing_logging', 'default_model',
        })


if __name__ == '__main__':
    unittest.main()
