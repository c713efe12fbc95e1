"""Scenario config files: a small YAML schema mirroring ``Scenario`` field for field.

Schema (version 1)::

    schema_version: 1            # required, must equal 1
    architecture: capa           # capa | simo_iid
    channel_regime: rayleigh     # rayleigh | rician | pure_los
    k_linear: 6.309573444801933  # rician only; k_db accepted as an alternative
    alignment: aligned           # aligned | misaligned (capa only)
    offset_deg: 3.0              # misaligned only; omit for the documented default
    n_branches: 8
    aperture:                    # capa only
      lx_m: 0.5
      lz_m: 0.5
      carrier_freq_hz: 2.4e9
      grid_points_per_axis: 32
    source_distance_m: 10.0      # optional, default 10.0
    snr_grid_db: [-10, -8, -6]
    trials: 1000000
    seed: 20260601
    quantization: one_bit        # one_bit | unquantized

``save_scenario`` followed by ``load_scenario`` round-trips losslessly.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import yaml

from .core import (
    AlignmentKind,
    ApertureSpec,
    Architecture,
    Quantization,
    RegimeKind,
    Scenario,
    ScenarioError,
)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """The config file cannot be parsed or fails schema validation."""


_SCENARIO_KEYS = {
    "schema_version", "architecture", "channel_regime", "k_linear", "k_db",
    "alignment", "offset_deg", "n_branches", "aperture", "source_distance_m",
    "snr_grid_db", "trials", "seed", "quantization",
}
_APERTURE_KEYS = {"lx_m", "lz_m", "carrier_freq_hz", "grid_points_per_axis"}


def _require(mapping: dict, key: str, where: str) -> Any:
    if key not in mapping:
        raise ConfigError(f"missing required field '{key}' in {where}")
    return mapping[key]


def _enum(cls, value: Any, fieldname: str):
    try:
        return cls(value)
    except ValueError:
        options = ", ".join(m.value for m in cls)
        raise ConfigError(f"field '{fieldname}': {value!r} is not one of [{options}]") from None


def scenario_from_dict(raw: dict) -> Scenario:
    """Validate a parsed config mapping and build the ``Scenario``."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    version = _require(raw, "schema_version", "config root")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}; this tool reads version {SCHEMA_VERSION}")
    missing = [k for k in ("architecture", "channel_regime", "n_branches", "snr_grid_db", "trials", "seed")
               if k not in raw]
    if missing:
        raise ConfigError(f"missing required field(s): {', '.join(missing)}")

    k_linear = raw.get("k_linear")
    if "k_db" in raw:
        if k_linear is not None:
            raise ConfigError("give k_linear or k_db, not both")
        k_linear = 10.0 ** (float(raw["k_db"]) / 10.0)

    aperture = None
    if raw.get("aperture") is not None:
        ap = raw["aperture"]
        if not isinstance(ap, dict):
            raise ConfigError("field 'aperture' must be a mapping")
        unknown = set(ap) - _APERTURE_KEYS
        if unknown:
            raise ConfigError(f"unknown aperture field(s): {', '.join(sorted(unknown))}")
        try:
            aperture = ApertureSpec(
                lx_m=float(_require(ap, "lx_m", "aperture")),
                lz_m=float(_require(ap, "lz_m", "aperture")),
                carrier_freq_hz=float(_require(ap, "carrier_freq_hz", "aperture")),
                grid_points_per_axis=int(ap.get("grid_points_per_axis", 32)),
            )
        except ScenarioError as exc:
            raise ConfigError(f"invalid aperture: {exc}") from exc

    snr = _require(raw, "snr_grid_db", "config root")
    if not isinstance(snr, (list, tuple)) or not snr:
        raise ConfigError("field 'snr_grid_db' must be a non-empty list of numbers")

    try:
        return Scenario(
            architecture=_enum(Architecture, _require(raw, "architecture", "config root"), "architecture"),
            channel_regime=_enum(RegimeKind, _require(raw, "channel_regime", "config root"), "channel_regime"),
            n_branches=int(_require(raw, "n_branches", "config root")),
            snr_grid_db=tuple(float(v) for v in snr),
            trials=int(_require(raw, "trials", "config root")),
            seed=int(_require(raw, "seed", "config root")),
            quantization=_enum(Quantization, raw.get("quantization", "one_bit"), "quantization"),
            alignment=_enum(AlignmentKind, raw.get("alignment", "aligned"), "alignment"),
            k_linear=None if k_linear is None else float(k_linear),
            offset_deg=None if raw.get("offset_deg") is None else float(raw["offset_deg"]),
            aperture=aperture,
            source_distance_m=float(raw.get("source_distance_m", 10.0)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ConfigError(f"invalid config value: {exc}") from exc


def scenario_to_dict(scenario: Scenario) -> dict:
    """Serialise a ``Scenario`` back to the schema mapping (canonical form)."""
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "architecture": scenario.architecture.value,
        "channel_regime": scenario.channel_regime.value,
        "n_branches": scenario.n_branches,
        "snr_grid_db": [float(v) for v in scenario.snr_grid_db],
        "trials": scenario.trials,
        "seed": scenario.seed,
        "quantization": scenario.quantization.value,
        "alignment": scenario.alignment.value,
        "source_distance_m": scenario.source_distance_m,
    }
    if scenario.k_linear is not None:
        out["k_linear"] = scenario.k_linear
    if scenario.offset_deg is not None:
        out["offset_deg"] = scenario.offset_deg
    if scenario.aperture is not None:
        out["aperture"] = {
            "lx_m": scenario.aperture.lx_m,
            "lz_m": scenario.aperture.lz_m,
            "carrier_freq_hz": scenario.aperture.carrier_freq_hz,
            "grid_points_per_axis": scenario.aperture.grid_points_per_axis,
        }
    return out


def load_scenario(path: str | Path) -> Scenario:
    """Parse and validate a scenario config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"cannot parse {path}{loc}: {getattr(exc, 'problem', exc)}") from exc
    try:
        return scenario_from_dict(raw)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(
        yaml.safe_dump(scenario_to_dict(scenario), sort_keys=True, default_flow_style=False),
        encoding="utf-8",
    )


def scenario_digest(scenario: Scenario) -> str:
    """Stable 16-hex-digit digest of the full scenario (seed included)."""
    blob = json.dumps(scenario_to_dict(scenario), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]
