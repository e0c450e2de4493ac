"""Versioned JSON run configuration: parsing and strict validation.

Every module precondition that can be checked before any compute is checked
here, and violations name the offending config path (e.g. "window.a").
Unknown keys are rejected at every level.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1

__all__ = ["ConfigError", "RunConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"config error at '{path}': {message}")
        self.path = path


def _expect_mapping(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ConfigError(path, f"unknown keys {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise ConfigError(path, f"missing keys {sorted(missing)}")


def _number(obj, path, lo=None, hi=None, lo_open=False, hi_open=False):
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        raise ConfigError(path, f"expected a number, got {obj!r}")
    v = float(obj)
    if not math.isfinite(v):
        raise ConfigError(path, "must be finite")
    if lo is not None and (v < lo or (lo_open and v == lo)):
        raise ConfigError(path, f"must be {'>' if lo_open else '>='} {lo}, got {v}")
    if hi is not None and (v > hi or (hi_open and v == hi)):
        raise ConfigError(path, f"must be {'<' if hi_open else '<='} {hi}, got {v}")
    return v


def _integer(obj, path, lo=None):
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ConfigError(path, f"expected an integer, got {obj!r}")
    if lo is not None and obj < lo:
        raise ConfigError(path, f"must be >= {lo}, got {obj}")
    return obj


def _boolean(obj, path):
    if not isinstance(obj, bool):
        raise ConfigError(path, f"expected a boolean, got {obj!r}")
    return obj


def _string(obj, path):
    if not isinstance(obj, str) or not obj:
        raise ConfigError(path, f"expected a non-empty string, got {obj!r}")
    return obj


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    alpha: float
    n_points: int
    length: float
    dt: float
    t_end: float
    dealias: bool
    nonlinear: bool
    initial: dict
    window: dict | None
    schedule: dict
    diagnostics: dict
    output_dir: str
    seed: int
    raw: dict = field(repr=False, default=None)


_DIAG_DEFAULTS = {
    "conserved": True,
    "l1": True,
    "weighted_j": False,
    "virial": False,
    "step1_times": [],
    "step2_times": [],
    "ledger_delta": 0.05,
}


def parse_config(data: dict) -> RunConfig:
    _expect_mapping(
        data,
        "$",
        required=("schema_version", "scenario", "alpha", "grid", "dt", "t_end",
                  "initial", "schedule", "output_dir"),
        optional=("dealias", "nonlinear", "window", "diagnostics", "seed"),
    )
    if data["schema_version"] != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"expected {SCHEMA_VERSION}")
    scenario = _string(data["scenario"], "scenario")
    alpha = _number(data["alpha"], "alpha", lo=0.0, hi=1.0, lo_open=True)

    grid = data["grid"]
    _expect_mapping(grid, "grid", required=("n_points", "length"))
    n_points = _integer(grid["n_points"], "grid.n_points", lo=16)
    if n_points % 2:
        raise ConfigError("grid.n_points", "must be even")
    length = _number(grid["length"], "grid.length", lo=0.0, lo_open=True)

    dt = _number(data["dt"], "dt", lo=0.0, lo_open=True)
    t_end = _number(data["t_end"], "t_end", lo=0.0, lo_open=True)
    dealias = _boolean(data.get("dealias", True), "dealias")
    nonlinear = _boolean(data.get("nonlinear", True), "nonlinear")

    initial = data["initial"]
    _expect_mapping(initial, "initial", required=("type",),
                    optional=("amplitude", "width", "center", "speed", "k_index", "path"))
    kind = _string(initial["type"], "initial.type")
    if kind == "gaussian":
        _expect_mapping(initial, "initial", required=("type", "amplitude", "width"),
                        optional=("center",))
        _number(initial["amplitude"], "initial.amplitude")
        _number(initial["width"], "initial.width", lo=0.0, lo_open=True)
        _number(initial.get("center", 0.0), "initial.center")
    elif kind == "soliton":
        _expect_mapping(initial, "initial", required=("type", "speed"))
        _number(initial["speed"], "initial.speed", lo=0.0, lo_open=True)
    elif kind == "mode":
        _expect_mapping(initial, "initial", required=("type", "k_index", "amplitude"))
        _integer(initial["k_index"], "initial.k_index", lo=1)
        if initial["k_index"] > n_points // 3:
            raise ConfigError("initial.k_index", "beyond the dealiased band N/3")
        _number(initial["amplitude"], "initial.amplitude")
    elif kind == "file":
        _expect_mapping(initial, "initial", required=("type", "path"))
        _string(initial["path"], "initial.path")
    else:
        raise ConfigError("initial.type",
                          f"unknown type {kind!r} (gaussian|soliton|mode|file)")

    window = data.get("window")
    if window is not None:
        _expect_mapping(window, "window", required=("a", "c"))
        a = _number(window["a"], "window.a", lo=0.0)
        _number(window["c"], "window.c", lo=0.0, lo_open=True)
        upper = 1.0 / (2.0 + alpha)
        if a >= upper:
            raise ConfigError(
                "window.a",
                f"a={a} gives b=1-a <= (alpha+1)/(alpha+2); the window exponent "
                f"must satisfy a < 1/(2+alpha) = {upper:.6g}",
            )

    schedule = data["schedule"]
    _expect_mapping(schedule, "schedule", required=("type",),
                    optional=("dt_sample", "epsilon", "count", "t_start", "times"))
    stype = _string(schedule["type"], "schedule.type")
    if stype == "uniform":
        _expect_mapping(schedule, "schedule", required=("type", "dt_sample"))
        _number(schedule["dt_sample"], "schedule.dt_sample", lo=0.0, lo_open=True)
    elif stype == "paper":
        _expect_mapping(schedule, "schedule",
                        required=("type", "epsilon", "count", "t_start"))
        _number(schedule["epsilon"], "schedule.epsilon", lo=0.0, lo_open=True)
        _integer(schedule["count"], "schedule.count", lo=2)
        _number(schedule["t_start"], "schedule.t_start", lo=0.0, lo_open=True)
        if schedule["t_start"] >= t_end:
            raise ConfigError("schedule.t_start", "must be below t_end")
    elif stype == "explicit":
        _expect_mapping(schedule, "schedule", required=("type", "times"))
        times = schedule["times"]
        if not isinstance(times, list) or not times:
            raise ConfigError("schedule.times", "expected a non-empty list")
        prev = -math.inf
        for i, t in enumerate(times):
            v = _number(t, f"schedule.times[{i}]", lo=0.0)
            if v <= prev:
                raise ConfigError(f"schedule.times[{i}]", "must be strictly increasing")
            if v > t_end:
                raise ConfigError(f"schedule.times[{i}]", "beyond t_end")
            prev = v
    else:
        raise ConfigError("schedule.type",
                          f"unknown type {stype!r} (uniform|paper|explicit)")

    diagnostics = dict(_DIAG_DEFAULTS)
    if "diagnostics" in data:
        _expect_mapping(data["diagnostics"], "diagnostics", required=(),
                        optional=tuple(_DIAG_DEFAULTS))
        for key, value in data["diagnostics"].items():
            if key in ("step1_times", "step2_times"):
                if not isinstance(value, list):
                    raise ConfigError(f"diagnostics.{key}", "expected a list")
                diagnostics[key] = [
                    _number(t, f"diagnostics.{key}[{i}]", lo=0.0)
                    for i, t in enumerate(value)
                ]
            elif key == "ledger_delta":
                diagnostics[key] = _number(value, "diagnostics.ledger_delta",
                                           lo=0.0, lo_open=True)
            else:
                diagnostics[key] = _boolean(value, f"diagnostics.{key}")

    needs_window = (
        diagnostics["weighted_j"]
        or diagnostics["step1_times"]
        or diagnostics["step2_times"]
    )
    if needs_window and window is None:
        raise ConfigError("window", "required by weighted_j / ledger diagnostics")

    output_dir = _string(data["output_dir"], "output_dir")
    seed = _integer(data.get("seed", 0), "seed", lo=0)

    return RunConfig(
        scenario=scenario, alpha=alpha, n_points=n_points, length=length,
        dt=dt, t_end=t_end, dealias=dealias, nonlinear=nonlinear,
        initial=dict(initial), window=dict(window) if window else None,
        schedule=dict(schedule), diagnostics=diagnostics,
        output_dir=output_dir, seed=seed, raw=data,
    )


def load_config(path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from None
    return parse_config(data)
