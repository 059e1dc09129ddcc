"""Tests for ratchet_junction configuration module."""

import logging
import os
from pathlib import Path
from unittest.mock import patch

from ratchet_junction.config import Config, defaults
from ratchet_junction.core.constants import Command, OutputFormat
from ratchet_junction.utils import LoggingControl


class TestConfig:
    """Tests for Config class."""

    def test_default_initialization(self) -> None:
        """Test Config initializes with defaults."""
        config = Config()
        assert isinstance(config.output_directory, Path)
        assert config.output_directory.name == "ratchet_output"
        assert config.csv_digits == 17

    def test_get_output_path(self, tmp_path: Path) -> None:
        """Test data file path generation."""
        config = Config(output_directory=tmp_path)
        path = config.get_output_path(Command.NOISE_SWEEP, OutputFormat.JSON)
        assert path == tmp_path / "noise-sweep.json"

    def test_tolerances(self) -> None:
        """Test tolerances carry the numerical thresholds."""
        tolerances = Config().tolerances()
        assert tolerances["v_threshold"] == 1e-4
        assert tolerances["bisection_tolerance"] == 1e-4
        assert tolerances["tail_tolerance"] == 1e-12

    def test_to_dict(self) -> None:
        """Test config serialization to dict."""
        result = Config().to_dict()
        assert "output_directory" in result
        assert "n_jobs" in result
        assert result["tolerances"] == Config().tolerances()


class TestEnvironment:
    """Tests for environment-driven defaults."""

    def test_n_jobs_default(self) -> None:
        """Test one worker without RATCHET_N_JOBS."""
        with patch.dict(os.environ, {}, clear=True):
            assert defaults.get_n_jobs() == 1

    def test_n_jobs_from_env(self) -> None:
        """Test RATCHET_N_JOBS sets the worker count."""
        with patch.dict(os.environ, {"RATCHET_N_JOBS": "4"}):
            assert Config().n_jobs == 4

    def test_n_jobs_invalid(self) -> None:
        """Test unparseable or zero worker counts fall back to one."""
        with patch.dict(os.environ, {"RATCHET_N_JOBS": "many"}):
            assert defaults.get_n_jobs() == 1
        with patch.dict(os.environ, {"RATCHET_N_JOBS": "0"}):
            assert defaults.get_n_jobs() == 1

    def test_log_level(self) -> None:
        """Test RATCHET_LOG_LEVEL is upper-cased."""
        with patch.dict(os.environ, {"RATCHET_LOG_LEVEL": "debug"}):
            assert defaults.get_log_level() == "DEBUG"
        with patch.dict(os.environ, {}, clear=True):
            assert defaults.get_log_level() == "INFO"


class TestLoggingControl:
    """Tests for LoggingControl."""

    def test_setup_default(self) -> None:
        """Test default setup uses INFO on root and WARNING on console."""
        control = LoggingControl()
        assert control.configured is False
        control.setup_logging()
        root = logging.getLogger()
        assert control.configured is True
        assert root.level == logging.INFO
        assert len(root.handlers) == 1
        assert root.handlers[0].level == logging.WARNING
        assert logging.getLogger("numba").level == logging.WARNING

    def test_setup_debug_with_file(self, tmp_path: Path) -> None:
        """Test debug setup adds a file handler."""
        log_file = tmp_path / "run.log"
        LoggingControl().setup_logging(enable_debug=True, log_to_file=True, log_file=log_file)
        root = logging.getLogger()
        assert root.level == logging.DEBUG
        assert len(root.handlers) == 2
        logging.getLogger("ratchet_junction.test").debug("hello")
        for handler in root.handlers:
            handler.flush()
        assert "hello" in log_file.read_text()
        for handler in list(root.handlers):
            handler.close()
            root.removeHandler(handler)
