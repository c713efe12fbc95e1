"""Command-line driver: config parsing, sweeps, eigen dumps, bound curves.

Every output file is self-describing: '#'-prefixed header lines carry the
tool version, a generation timestamp, and a single-line JSON manifest with
the fully resolved scenario, its digest, and the seed, so the exact run can
be reconstructed from the file alone.  Set ``SOURCE_DATE_EPOCH`` to pin the
timestamp and make re-runs byte-identical.

Exit codes: 0 success, 2 config/usage error, 3 invalid scenario,
4 unsupported scenario/bound pairing.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    BoundKind,
    UnsupportedBound,
    applicable_bound_kinds,
    evaluate_bound,
)
from .channel import effective_model
from .config import ConfigError, load_scenario, scenario_digest, scenario_to_dict
from .core import Architecture, Scenario, ScenarioError
from .mc import sweep

#: Scenario groups reproducing the three experiment families.  Each entry
#: maps a preset name to the shipped config files swept into one directory.
PRESETS: dict[str, tuple[str, ...]] = {
    "fig-rayleigh": (
        "rayleigh_capa_a0250.yaml",
        "rayleigh_capa_a0031.yaml",
        "rayleigh_simo_n8.yaml",
    ),
    "fig-rician": (
        "rician_capa_k2db.yaml",
        "rician_capa_k8db.yaml",
        "rician_simo_k2db.yaml",
        "rician_simo_k8db.yaml",
        "rician_capa_unq_k8db.yaml",
        "rician_simo_unq_k8db.yaml",
    ),
    "fig-los": (
        "los_capa_aligned.yaml",
        "los_capa_aligned_unq.yaml",
        "los_capa_misaligned.yaml",
        "los_simo.yaml",
        "los_simo_unq.yaml",
    ),
}

MMA_NOTE = "capa_mma_gamma is accurate at low-to-moderate SNR and over-optimistic above ~2 dB"


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        dt = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    else:
        dt = datetime.datetime.now(tz=datetime.timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def _manifest_lines(kind: str, scenario: Scenario, config_path: str | None) -> list[str]:
    manifest = {
        "config_path": config_path,
        "digest": scenario_digest(scenario),
        "scenario": scenario_to_dict(scenario),
        "seed": scenario.seed,
        "tool_version": __version__,
    }
    return [
        f"# capa-sim {kind} v{__version__}",
        f"# generated_at: {_timestamp()}",
        "# manifest: " + json.dumps(manifest, sort_keys=True, separators=(",", ":")),
    ]


def _fmt(x: float) -> str:
    # Locale-independent: period decimal separator, no grouping.
    return format(float(x), ".12g")


def _apply_overrides(scenario: Scenario, args) -> Scenario:
    seed = getattr(args, "seed", None)
    if seed is None and os.environ.get("CAPASIM_SEED"):
        seed = int(os.environ["CAPASIM_SEED"])
    trials = getattr(args, "trials", None)
    if seed is None and trials is None:
        return scenario
    from dataclasses import replace

    kwargs = {}
    if seed is not None:
        kwargs["seed"] = seed
    if trials is not None:
        kwargs["trials"] = trials
    return replace(scenario, **kwargs)


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return args.threads
    env = os.environ.get("CAPASIM_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def _write_sweep_csv(path: Path, scenario: Scenario, config_path: str | None,
                     result, bound_curves) -> None:
    lines = _manifest_lines("sweep", scenario, config_path)
    if any(c.kind is BoundKind.CAPA_MMA_GAMMA for c in bound_curves):
        lines.append(f"# note: {MMA_NOTE}")
    cols = ["snr_db", "sep_mc", "ci_low", "ci_high", "errors", "trials"]
    cols += [f"bound_{c.kind.value}" for c in bound_curves]
    lines.append(",".join(cols))
    for i, pt in enumerate(result.points):
        row = [_fmt(pt.snr_db), _fmt(pt.sep), _fmt(pt.ci_low), _fmt(pt.ci_high),
               str(pt.errors), str(pt.trials)]
        row += [_fmt(c.points[i][1]) for c in bound_curves]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_sweep(args) -> int:
    if args.preset:
        if args.preset not in PRESETS:
            print(f"unknown preset {args.preset!r}; available: {', '.join(sorted(PRESETS))}", file=sys.stderr)
            return 2
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        base = resources.files("capasim").joinpath("presets")
        status = 0
        for name in PRESETS[args.preset]:
            with resources.as_file(base.joinpath(name)) as cfg_path:
                status = _sweep_one(cfg_path, out_dir / (Path(name).stem + ".csv"), args)
            if status != 0:
                return status
        return status
    if not args.config:
        print("sweep needs --config or --preset", file=sys.stderr)
        return 2
    return _sweep_one(Path(args.config), Path(args.out), args)


def _sweep_one(config_path: Path, out_path: Path, args) -> int:
    scenario = _apply_overrides(load_scenario(config_path), args)
    bound_curves = []
    if args.bounds == "auto":
        kinds = applicable_bound_kinds(scenario)
        lambdas = None
        if BoundKind.CAPA_MMA_GAMMA in kinds:
            lambdas = effective_model(scenario).eigenvalues
        bound_curves = [evaluate_bound(k, scenario, lambdas=lambdas) for k in kinds]
    print(f"[capa-sim] sweep {config_path} -> {out_path}", file=sys.stderr, flush=True)
    result = sweep(scenario, threads=_threads(args), early_stop=args.early_stop, progress=True)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    _write_sweep_csv(out_path, scenario, str(config_path), result, bound_curves)
    print(
        f"[capa-sim] wrote {out_path} ({len(result.points)} points, "
        f"{result.trials_per_second / 1e6:.2f}M trials/s)",
        file=sys.stderr,
        flush=True,
    )
    return 0


def cmd_eigen(args) -> int:
    scenario = load_scenario(args.config)
    if scenario.architecture is not Architecture.CAPA:
        raise ScenarioError("eigen dumps need a capa scenario (the iid architecture has a flat spectrum)")
    model = effective_model(scenario)
    m = model.n_modes
    d = model.dof_total
    lines = _manifest_lines("eigen", scenario, str(args.config))
    lines.append("mode_index,eigenvalue,los_power,cumulative_energy_fraction")
    cum = np.cumsum(model.eigenvalues) / m
    for i in range(m):
        lines.append(",".join([
            str(i + 1),
            _fmt(model.eigenvalues[i]),
            _fmt(abs(model.los_modes[i]) ** 2),
            _fmt(cum[i]),
        ]))
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"D = {d} available modes; M = {m} active; M/D = {100.0 * m / d:g}%")
    return 0


def cmd_bounds(args) -> int:
    scenario = _apply_overrides(load_scenario(args.config), args)
    kinds = applicable_bound_kinds(scenario)
    if not kinds:
        raise UnsupportedBound(
            "no closed-form 1-bit SEP bound exists for rician scenarios; run a simulation sweep instead"
        )
    lambdas = None
    if BoundKind.CAPA_MMA_GAMMA in kinds:
        lambdas = effective_model(scenario).eigenvalues
    lines = _manifest_lines("bounds", scenario, str(args.config))
    if BoundKind.CAPA_MMA_GAMMA in kinds:
        lines.append(f"# note: {MMA_NOTE}")
    lines.append("kind,snr_db,sep")
    for kind in kinds:
        curve = evaluate_bound(kind, scenario, lambdas=lambdas)
        for snr_db, sep in curve.points:
            lines.append(f"{kind.value},{_fmt(snr_db)},{_fmt(sep)}")
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capa-sim",
        description="SEP simulator and analytical bounds for 1-bit quantized receivers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo SEP sweep over the scenario's SNR grid")
    p_sweep.add_argument("--config", help="scenario config file")
    p_sweep.add_argument("--preset", help=f"named scenario group ({', '.join(sorted(PRESETS))})")
    p_sweep.add_argument("--out", required=True, help="output CSV (a directory for presets)")
    p_sweep.add_argument("--trials", type=int, help="override the config's trial budget")
    p_sweep.add_argument("--seed", type=int, help="override the config's seed (or CAPASIM_SEED)")
    p_sweep.add_argument("--threads", type=int, help="worker threads (or CAPASIM_THREADS; default: all cores)")
    p_sweep.add_argument("--bounds", choices=("auto", "none"), default="auto",
                         help="embed applicable analytical bound columns (default auto)")
    p_sweep.add_argument("--early-stop", action="store_true",
                         help="stop a point after >=200 errors and >=1e5 trials (off by default)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_eigen = sub.add_parser("eigen", help="dump the mode spectrum (eigenvalues + LoS vector) as CSV")
    p_eigen.add_argument("--config", required=True)
    p_eigen.add_argument("--out", required=True)
    p_eigen.set_defaults(func=cmd_eigen)

    p_bounds = sub.add_parser("bounds", help="emit analytical bound curves for a scenario as CSV")
    p_bounds.add_argument("--config", required=True)
    p_bounds.add_argument("--out", required=True)
    p_bounds.add_argument("--seed", type=int, help="override the config's seed")
    p_bounds.add_argument("--trials", type=int, help=argparse.SUPPRESS)
    p_bounds.set_defaults(func=cmd_bounds)

    p_version = sub.add_parser("version", help="print the tool version")
    p_version.set_defaults(func=lambda args: print(f"capa-sim {__version__}") or 0)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ScenarioError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return 3
    except UnsupportedBound as exc:
        print(f"unsupported bound request: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
