"""Configuration module for ratchet_junction.

Run settings and numerical tolerances with environment variable support.
"""

from dataclasses import dataclass, field
from pathlib import Path

from ratchet_junction.config import defaults
from ratchet_junction.core import constants
from ratchet_junction.core.constants import Command, OutputFormat


@dataclass
class Config:
    """Configuration settings for ratchet_junction runs.

    Attributes:
        output_directory: Directory receiving data files and sidecars.
        n_jobs: Worker threads for grid evaluation.
    """

    output_directory: Path = field(default_factory=defaults.get_output_dir)
    n_jobs: int = field(default_factory=defaults.get_n_jobs)
    log_to_file: bool = False
    log_file: Path = Path("ratchet_junction.log")
    csv_digits: int = constants.CSV_SIGNIFICANT_DIGITS

    # Tolerances recorded in every sidecar
    v_threshold: float = constants.V_THRESHOLD
    bisection_tolerance: float = constants.BISECTION_TOLERANCE
    tail_tolerance: float = constants.TAIL_TOLERANCE

    def get_output_path(self, command: Command, output_format: OutputFormat) -> Path:
        """Get the default data file path for a command.

        Args:
            command: CLI command being run.
            output_format: Data file format.

        Returns:
            Path inside the output directory, e.g. ``noise-sweep.csv``.
        """
        return self.output_directory / f"{command.value}.{output_format.value}"

    def tolerances(self) -> dict[str, float | int]:
        """Numerical tolerances used by a run."""
        return {
            "v_threshold": self.v_threshold,
            "bisection_tolerance": self.bisection_tolerance,
            "tail_tolerance": self.tail_tolerance,
            "csv_digits": self.csv_digits,
        }

    def to_dict(self) -> dict:
        """Convert config to dictionary for serialization."""
        return {
            "output_directory": str(self.output_directory),
            "n_jobs": self.n_jobs,
            "log_to_file": self.log_to_file,
            "log_file": str(self.log_file),
            "tolerances": self.tolerances(),
        }
