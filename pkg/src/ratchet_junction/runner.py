"""Command orchestration: resolve a RunConfig, compute, and write artifacts.

Every run writes one data file (CSV or JSON) and a ``.meta.json`` sidecar
holding the fully resolved configuration, the tool version and the
numerical tolerances. The sidecar can be passed back via ``--config``.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import ValidationError

from ratchet_junction import __version__
from ratchet_junction.config import Config
from ratchet_junction.core import junction, shotnoise, waveform
from ratchet_junction.core.constants import Command, MapMode, OutputFormat
from ratchet_junction.core.exceptions import RatchetError
from ratchet_junction.core.sweeps import (
    log_zeta_ratio,
    parse_grid,
    refine_extremum,
    zeta_from_log_ratio,
)
from ratchet_junction.models import (
    BiharmonicSpec,
    ChannelScanParameters,
    CommandParameters,
    EfficiencyMapParameters,
    IvMapParameters,
    NoiseSweepParameters,
    RunConfig,
    SimControl,
    WaveformParameters,
)
from ratchet_junction.models.run_config import ChannelParameters, ControlOverrides
from ratchet_junction.utils.output import sidecar_path, write_csv, write_json_table, write_sidecar

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

Table = tuple[list[str], list[list[float]], dict[str, Any]]


def describe_validation_error(exc: ValidationError) -> list[str]:
    """One message per offending parameter, naming it."""
    messages = []
    for error in exc.errors():
        name = ".".join(str(part) for part in error["loc"]) or "parameters"
        messages.append(f"Invalid parameter '{name}': {error['msg']}")
    return messages


def _control(params: ControlOverrides, omega: float) -> SimControl:
    """Omega-dependent defaults with any explicit overrides applied."""
    base = junction.default_control(omega)
    updates = {
        name: value
        for name in ("dt", "transient_periods", "average_periods")
        if (value := getattr(params, name)) is not None
    }
    return base.model_copy(update=updates) if updates else base


def _zeta_axis(params: ChannelParameters) -> NDArray[np.float64]:
    """Increasing zeta grid, from zeta_grid or from the log-ratio grid."""
    if params.zeta_grid is not None:
        return parse_grid(params.zeta_grid)
    # log((1 - zeta)/zeta) decreases with zeta
    return zeta_from_log_ratio(parse_grid(params.log_ratio_grid))[::-1].copy()


def _channel_drive(params: ChannelParameters) -> BiharmonicSpec:
    return BiharmonicSpec(
        family=params.family,
        zeta=0.5,
        alpha=params.alpha,
        theta=params.theta,
        amplitude=params.amplitude_ratio,
        omega=params.omega,
    )


def _finite(value: float) -> float | None:
    return value if math.isfinite(value) else None


class JobRunner:
    """Run one command of the CLI and write its artifacts."""

    def __init__(self, run_config: RunConfig, config: Config | None = None) -> None:
        """Initialize runner.

        Args:
            run_config: Job description.
            config: Run settings and tolerances.
        """
        self.run_config = run_config
        self.config = config or Config()

    def process(self) -> dict[str, Any]:
        """Validate, compute and write the data file and sidecar.

        Returns:
            Dictionary with ``success``, ``exit_code`` and either the output
            paths and summary or a list of ``errors``.
        """
        try:
            params = self.run_config.resolve()
        except ValidationError as e:
            return {"success": False, "exit_code": EXIT_INVALID, "errors": describe_validation_error(e)}

        command = self.run_config.command
        logger.info(f"Running {command.value}")
        try:
            columns, rows, summary = self._compute(command, params)
        except RatchetError as e:
            logger.error(f"{command.value} failed: {e}")
            return {"success": False, "exit_code": EXIT_FAILURE, "errors": [f"{type(e).__name__}: {e}"]}

        output_path = self.run_config.output or self.config.get_output_path(
            command, self.run_config.output_format
        )
        if self.run_config.output_format is OutputFormat.CSV:
            write_csv(output_path, columns, rows, self.config.csv_digits)
        else:
            write_json_table(output_path, columns, rows, summary)

        resolved = self.run_config.resolved().model_copy(update={"output": output_path})
        metadata_path = write_sidecar(
            sidecar_path(output_path),
            {
                "run_config": resolved.model_dump(mode="json"),
                "version": __version__,
                "config": self.config.to_dict(),
                "columns": columns,
                "summary": {k: _finite(v) if isinstance(v, float) else v for k, v in summary.items()},
            },
        )
        logger.info(f"Wrote {len(rows)} rows to {output_path}")
        return {
            "success": True,
            "exit_code": EXIT_OK,
            "output_path": output_path,
            "metadata_path": metadata_path,
            "summary": summary,
        }

    def _compute(self, command: Command, params: CommandParameters) -> Table:
        if isinstance(params, WaveformParameters):
            return self._waveform(params)
        if isinstance(params, EfficiencyMapParameters):
            return self._efficiency_map(params)
        if isinstance(params, IvMapParameters):
            return self._iv_map(params)
        if isinstance(params, ChannelScanParameters):
            return self._channel(params)
        if isinstance(params, NoiseSweepParameters):
            return self._noise_sweep(params)
        raise RatchetError(f"unsupported command {command.value}")  # pragma: no cover

    def _waveform(self, params: WaveformParameters) -> Table:
        spec = BiharmonicSpec(
            family=params.family,
            zeta=params.zeta,
            alpha=params.alpha,
            theta=params.theta,
            amplitude=params.amplitude,
            omega=params.omega,
        )
        norm = waveform.normalize(spec)
        t = np.arange(params.samples) * spec.period / params.samples
        f = waveform.evaluate(spec, t)
        f_star = norm(t)
        rows = [[float(a), float(b), float(c)] for a, b, c in zip(t, f, f_star, strict=True)]
        summary = {
            "maximum": norm.extrema.maximum,
            "minimum": norm.extrema.minimum,
            "load_term": norm.extrema.load_term,
            "branch": norm.extrema.branch.value,
            "eta_ac": 2.0 * norm.extrema.load_term,
            "impulse": waveform.impulse(norm),
            "impulse_closed_form": waveform.impulse_closed_form(norm),
        }
        return ["t", "f", "f_star"], rows, summary

    def _efficiency_map(self, params: EfficiencyMapParameters) -> Table:
        alpha_grid = parse_grid(params.alpha_grid)
        zeta_grid = parse_grid(params.zeta_grid)
        control = _control(params, params.omega) if params.mode is MapMode.ODE else None
        result = junction.efficiency_map(
            alpha_grid,
            zeta_grid,
            params.family,
            params.theta,
            mode=params.mode,
            amplitude=params.amplitude,
            omega=params.omega,
            control=control,
            v_threshold=self.config.v_threshold,
            tolerance=self.config.bisection_tolerance,
            n_jobs=self.config.n_jobs,
        )
        zeta_opt = result.overlays["zeta_opt"]
        rows = [
            [float(zeta), float(alpha), float(result.values[i, j]), float(zeta_opt[i])]
            for i, alpha in enumerate(alpha_grid)
            for j, zeta in enumerate(zeta_grid)
        ]
        argmax = [
            _finite(refine_extremum(zeta_grid, np.abs(result.values[i]), "max"))
            for i in range(alpha_grid.size)
        ]
        summary: dict[str, Any] = {
            "cells": int(result.values.size),
            "failures": result.failures,
            "argmax_zeta": argmax,
        }
        return ["zeta", "alpha", "eta_ac", "zeta_opt"], rows, summary

    def _iv_map(self, params: IvMapParameters) -> Table:
        i_dc_grid = parse_grid(params.i_dc_grid)
        zeta_grid = _zeta_axis(params)
        drive = _channel_drive(params)
        result = junction.voltage_map(
            i_dc_grid,
            zeta_grid,
            drive,
            _control(params, params.omega),
            n_jobs=self.config.n_jobs,
        )
        overlays = result.overlays
        rows = [
            [
                float(i_dc),
                float(overlays["log_zeta_ratio"][j]),
                float(zeta),
                float(result.values[i, j]),
                float(overlays["channel_lower"][j]),
                float(overlays["channel_upper"][j]),
            ]
            for i, i_dc in enumerate(i_dc_grid)
            for j, zeta in enumerate(zeta_grid)
        ]
        ratchet = (i_dc_grid[:, None] > 0.0) & (result.values < -self.config.v_threshold)
        summary: dict[str, Any] = {
            "cells": int(result.values.size),
            "failures": result.failures,
            "ratchet_cells": int(np.count_nonzero(ratchet)),
        }
        columns = ["i_dc", "log_zeta_ratio", "zeta", "v_jj", "channel_lower", "channel_upper"]
        return columns, rows, summary

    def _channel(self, params: ChannelScanParameters) -> Table:
        zeta_grid = _zeta_axis(params)
        control = _control(params, params.omega) if params.mode is MapMode.ODE else None
        scan = junction.channel_scan(
            _channel_drive(params),
            zeta_grid,
            mode=params.mode,
            control=control,
            v_threshold=self.config.v_threshold,
            tolerance=self.config.bisection_tolerance,
            n_jobs=self.config.n_jobs,
        )
        ratio = log_zeta_ratio(zeta_grid)
        columns = ["zeta", "log_zeta_ratio", "lower", "upper", "eta"]
        table = [zeta_grid, ratio, scan.lower, scan.upper, scan.efficiency]
        if scan.ode_lower is not None and scan.ode_upper is not None and scan.ode_efficiency is not None:
            columns += ["ode_lower", "ode_upper", "ode_eta"]
            table += [scan.ode_lower, scan.ode_upper, scan.ode_efficiency]
        rows = [[float(column[j]) for column in table] for j in range(zeta_grid.size)]
        summary: dict[str, Any] = {"points": int(zeta_grid.size), "failures": scan.failures}
        return columns, rows, summary

    def _noise_sweep(self, params: NoiseSweepParameters) -> Table:
        zeta_grid = parse_grid(params.zeta_grid)
        result = shotnoise.noise_sweep(
            params.total,
            params.q,
            params.phi,
            zeta_grid,
            conductance=params.conductance,
            fano=params.fano,
            tail_tolerance=self.config.tail_tolerance,
            n_jobs=self.config.n_jobs,
        )
        rows = [
            [float(z), float(s), float(s_ac)]
            for z, s, s_ac in zip(result.zeta, result.noise, result.excess, strict=True)
        ]
        summary: dict[str, Any] = {
            "argmin_noise": result.argmin_noise,
            "argmin_excess": result.argmin_excess,
            "min_noise": float(np.nanmin(result.noise)) if result.failures < zeta_grid.size else math.nan,
            "excess_order": result.excess_order,
            "q_rounded": result.q_rounded,
            "failures": result.failures,
        }
        return ["zeta", "S", "S_ac"], rows, summary


def run(run_config: RunConfig, config: Config | None = None) -> dict[str, Any]:
    """Run one job; see :meth:`JobRunner.process`."""
    return JobRunner(run_config, config).process()


def load_run_config(path: Path) -> RunConfig:
    """Read a RunConfig from a sidecar or a bare RunConfig JSON file."""
    payload = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(payload, dict) and "run_config" in payload:
        payload = payload["run_config"]
    return RunConfig.model_validate(payload)
