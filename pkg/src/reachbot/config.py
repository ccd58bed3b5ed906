"""Study config files: versioned JSON schema, validation, defaults.

Top-level blocks: terrain, robot, study, constraints, calibration. All unit
fields carry a unit suffix in the file (e.g. tau_drill_nm, delta_ref_m).
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .robot import MountSpec, make_robot
from .study import Calibration, Constraints, StudyConfig
from .terrain import make_terrain

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """A config file failed validation; message names the offending field."""


def _require_type(block: dict, field: str, types, default=None, context=""):
    value = block.get(field, default)
    if value is None:
        return None
    if not isinstance(value, types) or isinstance(value, bool) and types != bool:
        raise ConfigError(f"{context}{field} has invalid type {type(value).__name__}")
    return value


def _check_keys(block: dict, allowed: set[str], context: str):
    unknown = set(block) - allowed
    if unknown:
        raise ConfigError(f"unknown {context} fields: {sorted(unknown)}")


def parse_config(raw: dict) -> StudyConfig:
    """Validate a parsed JSON study config and build a StudyConfig."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    _check_keys(raw, {"schema_version", "seed", "terrain", "robot", "study",
                      "constraints", "calibration"}, "config")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unknown schema_version {version!r}; expected {SCHEMA_VERSION}")
    seed = _require_type(raw, "seed", int, 0)
    if seed < 0:
        raise ConfigError("seed must be non-negative")

    try:
        terrain = make_terrain(raw.get("terrain", {"kind": "corridor"}))
    except ValueError as exc:
        raise ConfigError(f"terrain: {exc}") from exc

    rb = dict(raw.get("robot", {}))
    _check_keys(rb, {"body_mass", "body_radius", "L_max", "L_min", "cone_half_angle_rad",
                     "m_boom", "m_gripper", "m_shoulder", "k", "g", "layout", "mounts"},
                "robot")
    layout = rb.pop("layout", "uniform")
    mounts_raw = rb.pop("mounts", None)
    kwargs = {}
    for src, dst in (("body_mass", "body_mass"), ("body_radius", "body_radius"),
                     ("L_max", "L_max"), ("L_min", "L_min"),
                     ("cone_half_angle_rad", "cone_half_angle"),
                     ("m_boom", "m_boom"), ("m_gripper", "m_gripper"),
                     ("m_shoulder", "m_shoulder"), ("k", "boom_stiffness"),
                     ("g", "gravity")):
        value = _require_type(rb, src, (int, float), context="robot.")
        if value is not None:
            kwargs[dst] = float(value)

    st = dict(raw.get("study", {}))
    _check_keys(st, {"n_range", "trials", "pool_multiplier", "surface_samples",
                     "aggregate", "coverage_layout"}, "study")
    n_range = st.get("n_range", [1, 10])
    if (not isinstance(n_range, list) or len(n_range) != 2
            or not all(isinstance(v, int) for v in n_range)):
        raise ConfigError("study.n_range must be [lo, hi] integers")
    n_range = (n_range[0], n_range[1])

    mounts = None
    if mounts_raw is not None:
        if n_range[0] != n_range[1]:
            raise ConfigError("robot.mounts requires a single-N study.n_range")
        try:
            mounts = [MountSpec(position=np.asarray(m["position"], dtype=float),
                                axis=np.asarray(m["axis"], dtype=float))
                      for m in mounts_raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"robot.mounts: {exc}") from exc
        if len(mounts) != n_range[0]:
            raise ConfigError("robot.mounts length must equal the study boom count")

    cs = dict(raw.get("constraints", {}))
    _check_keys(cs, {"tau_drill_nm", "M_CR_nm", "one_boom_out"}, "constraints")
    m_cr = _require_type(cs, "M_CR_nm", (int, float), context="constraints.")
    one_out = cs.get("one_boom_out", True)
    if not isinstance(one_out, bool):
        raise ConfigError("constraints.one_boom_out must be a boolean")

    cal = dict(raw.get("calibration", {}))
    _check_keys(cal, {"delta_ref_m"}, "calibration")

    try:
        template = make_robot(boom_count=max(n_range), layout=layout,
                              mounts=mounts if mounts and len(mounts) == max(n_range) else None,
                              **kwargs)
        constraints = Constraints(
            tau_drill=float(cs.get("tau_drill_nm", 4.0)),
            m_critical=float(m_cr) if m_cr is not None else None,
            one_boom_out=one_out)
        calibration = Calibration(delta_ref=float(cal.get("delta_ref_m", 0.1)))
        return StudyConfig(
            terrain=terrain,
            robot_template=template,
            n_range=n_range,
            trials=int(st.get("trials", 100)),
            seed=int(seed),
            layout=layout,
            pool_multiplier=int(st.get("pool_multiplier", 3)),
            surface_samples=int(st.get("surface_samples", 20000)),
            coverage_layout=st.get("coverage_layout", "nested"),
            aggregate_mode=st.get("aggregate", "median"),
            constraints=constraints,
            calibration=calibration)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> tuple[StudyConfig, dict]:
    """Read and validate a config file; returns (config, raw JSON echo)."""
    text = Path(path).read_text()
    raw = json.loads(text)  # JSONDecodeError carries line/column
    return parse_config(raw), raw


def default_config_dict(seed: int = 0) -> dict:
    """A complete config with every default spelled out."""
    return {
        "schema_version": 1,
        "seed": seed,
        "terrain": {"kind": "corridor", "radius": 15.0, "length": 100.0},
        "robot": {
            "body_mass": 10.0, "body_radius": 0.5, "L_max": 20.0, "L_min": 0.5,
            "cone_half_angle_rad": math.pi / 4, "m_boom": 1.0, "m_gripper": 0.5,
            "m_shoulder": 0.5, "k": 100.0, "g": 3.721, "layout": "uniform",
        },
        "study": {"n_range": [1, 10], "trials": 100, "pool_multiplier": 3,
                  "surface_samples": 20000, "aggregate": "median",
                  "coverage_layout": "nested"},
        "constraints": {"tau_drill_nm": 4.0, "one_boom_out": True},
        "calibration": {"delta_ref_m": 0.1},
    }
