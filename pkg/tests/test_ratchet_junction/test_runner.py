"""Tests for the job runner."""

import csv
import json
from pathlib import Path

import pytest

from ratchet_junction import __version__
from ratchet_junction.config import Config
from ratchet_junction.core.constants import Command, OutputFormat
from ratchet_junction.models import RunConfig
from ratchet_junction.runner import EXIT_FAILURE, EXIT_INVALID, JobRunner, load_run_config, run


def _read_csv(path: Path) -> list[dict[str, str]]:
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


class TestJobRunner:
    """Tests for JobRunner.process."""

    def test_waveform(self, tmp_path: Path) -> None:
        """Test the waveform table, summary and sidecar."""
        config = Config(output_directory=tmp_path)
        result = run(RunConfig(command=Command.WAVEFORM, parameters={"samples": 64}), config)
        assert result["success"] is True
        assert result["output_path"] == tmp_path / "waveform.csv"
        rows = _read_csv(result["output_path"])
        assert len(rows) == 64
        assert list(rows[0]) == ["t", "f", "f_star"]
        assert max(float(r["f_star"]) for r in rows) <= 0.5 + 1e-12
        summary = result["summary"]
        assert summary["load_term"] == pytest.approx(1.0 / 6.0)
        assert summary["impulse"] == pytest.approx(summary["impulse_closed_form"], abs=1e-10)

        sidecar = json.loads(result["metadata_path"].read_text())
        assert sidecar["version"] == __version__
        assert sidecar["run_config"]["parameters"]["samples"] == 64
        assert sidecar["run_config"]["parameters"]["family"] == "cos-cos"
        assert sidecar["config"]["tolerances"]["csv_digits"] == 17
        assert sidecar["config"]["output_directory"] == str(tmp_path)

    def test_efficiency_map(self, tmp_path: Path) -> None:
        """Test closed-form map rows and the zeta_opt column."""
        run_config = RunConfig(
            command=Command.EFFICIENCY_MAP,
            parameters={"alpha_grid": "1:2:2", "zeta_grid": "0:1:11"},
            output=tmp_path / "map.csv",
        )
        result = run(run_config, Config())
        rows = _read_csv(result["output_path"])
        assert len(rows) == 22
        assert float(rows[0]["zeta_opt"]) == pytest.approx(2.0 / 3.0)
        assert result["summary"]["argmax_zeta"][0] == pytest.approx(2.0 / 3.0, abs=0.05)

    def test_iv_map_lower_edge(self, tmp_path: Path) -> None:
        """Test I0 = I_c gives a lower channel edge of zero in every row."""
        run_config = RunConfig(
            command=Command.IV_MAP,
            parameters={
                "i0": 1.0,
                "ic": 1.0,
                "theta": 1.5707963,
                "family": "sin-sin",
                "omega": 1.0,
                "i_dc_grid": "0:1:2",
                "log_ratio_grid": "-1:1:3",
                "transient_periods": 2,
                "average_periods": 4,
            },
            output=tmp_path / "iv.csv",
        )
        result = run(run_config, Config())
        assert result["success"] is True
        rows = _read_csv(result["output_path"])
        assert len(rows) == 6
        assert all(abs(float(r["channel_lower"])) < 1e-6 for r in rows)
        zeta = [float(r["zeta"]) for r in rows[:3]]
        assert zeta == sorted(zeta)

    def test_channel_closed_form(self, tmp_path: Path) -> None:
        """Test the channel command reports unit efficiency and the widest channel at zeta = 2/3."""
        run_config = RunConfig(
            command=Command.CHANNEL,
            parameters={"i0": 1.18, "ic": 1.18, "zeta_grid": "0.5:0.8:10"},
            output=tmp_path / "channel.json",
            output_format=OutputFormat.JSON,
        )
        result = run(run_config, Config())
        payload = json.loads(result["output_path"].read_text())
        assert list(payload["columns"]) == ["zeta", "log_zeta_ratio", "lower", "upper", "eta"]
        zeta = payload["columns"]["zeta"]
        upper = payload["columns"]["upper"]
        assert payload["columns"]["eta"] == pytest.approx([1.0] * len(zeta))
        best = max(range(len(zeta)), key=lambda j: upper[j])
        assert zeta[best] == pytest.approx(2.0 / 3.0, abs=0.02)

    def test_noise_sweep(self, tmp_path: Path) -> None:
        """Test the noise sweep columns and summary."""
        run_config = RunConfig(
            command=Command.NOISE_SWEEP,
            parameters={"zeta_grid": "0.6:0.75:31"},
            output=tmp_path / "noise.csv",
        )
        result = run(run_config, Config())
        rows = _read_csv(result["output_path"])
        assert list(rows[0]) == ["zeta", "S", "S_ac"]
        for row in rows:
            assert float(row["S"]) == pytest.approx(4.0 + float(row["S_ac"]), abs=1e-9)
        assert result["summary"]["argmin_noise"] == pytest.approx(0.6858, abs=2e-3)

    def test_invalid_parameter(self, tmp_path: Path) -> None:
        """Test invalid parameters fail before any output is written."""
        run_config = RunConfig(
            command=Command.WAVEFORM,
            parameters={"zeta": 1.5},
            output=tmp_path / "bad.csv",
        )
        result = JobRunner(run_config, Config()).process()
        assert result["success"] is False
        assert result["exit_code"] == EXIT_INVALID
        assert any("zeta" in error for error in result["errors"])
        assert not (tmp_path / "bad.csv").exists()

    def test_computation_failure(self, tmp_path: Path) -> None:
        """Test a flat drive fails with module diagnostics."""
        run_config = RunConfig(
            command=Command.WAVEFORM,
            parameters={"amplitude": 0.0},
            output=tmp_path / "flat.csv",
        )
        result = run(run_config, Config())
        assert result["exit_code"] == EXIT_FAILURE
        assert "DegenerateWaveformError" in result["errors"][0]


class TestLoadRunConfig:
    """Tests for reloading configs."""

    def test_sidecar_round_trip(self, tmp_path: Path) -> None:
        """Test a sidecar reproduces the same data file."""
        first = run(
            RunConfig(command=Command.WAVEFORM, parameters={"samples": 16, "theta": 0.4}, output=tmp_path / "a.csv"),
            Config(),
        )
        reloaded = load_run_config(first["metadata_path"])
        assert reloaded.command is Command.WAVEFORM
        assert reloaded.parameters["theta"] == pytest.approx(0.4)
        run(reloaded.model_copy(update={"output": tmp_path / "b.csv"}), Config())
        assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()

    def test_bare_run_config(self, tmp_path: Path) -> None:
        """Test a plain RunConfig JSON file loads."""
        path = tmp_path / "job.json"
        path.write_text(json.dumps({"command": "noise-sweep", "parameters": {"q": 2}}))
        loaded = load_run_config(path)
        assert loaded.command is Command.NOISE_SWEEP
        assert loaded.parameters == {"q": 2}
        assert loaded.resolve().total == pytest.approx(8.1)
