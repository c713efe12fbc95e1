"""Deterministic SEP-vs-SNR figure rendering.

Simulation series are drawn as markers with binomial confidence whiskers;
analytical bounds come from the ``bound_*`` columns of the same CSVs and are
drawn as lines.  Every plotted series traces back to an input file whose
manifest is recorded both in the PNG metadata and in a ``.manifest.json``
sidecar, and rendering the same inputs twice produces identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .io import SweepTable, read_sweep_csv  # noqa: E402

#: All positive SEP values of interest sit above this; zero-error points are
#: masked off the log axis and whiskers are clipped here.
SEP_FLOOR = 1e-9

_STYLE = {
    "figure.figsize": (6.4, 4.6),
    "figure.dpi": 130,
    "savefig.dpi": 130,
    "font.size": 9.5,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "legend.fontsize": 8,
    "lines.markersize": 4.5,
}


@dataclass(frozen=True)
class SimSeries:
    """Monte Carlo series: markers + CI whiskers from one sweep CSV."""

    path: str
    label: str
    color: str
    marker: str = "o"


@dataclass(frozen=True)
class BoundSeries:
    """Analytical overlay taken from a ``bound_*`` column of a sweep CSV."""

    path: str
    column: str
    label: str
    color: str
    linestyle: str = "-"


@dataclass(frozen=True)
class FigureSpec:
    title: str
    out_path: str
    sim_series: tuple[SimSeries, ...]
    bound_series: tuple[BoundSeries, ...] = ()
    xlabel: str = "per-branch SNR (dB)"
    ylabel: str = "symbol error probability"


def _plot_sim(ax, table: SweepTable, series: SimSeries) -> None:
    sep = table.sep.copy()
    lo = table.columns["ci_low"]
    hi = table.columns["ci_high"]
    mask = sep > 0
    yerr = np.vstack([
        np.clip(sep[mask] - np.maximum(lo[mask], SEP_FLOOR), 0, None),
        np.clip(hi[mask] - sep[mask], 0, None),
    ])
    label = f"{series.label} ({table.trials:d} trials)"
    ax.errorbar(
        table.snr_db[mask], sep[mask], yerr=yerr,
        fmt=series.marker, color=series.color, label=label,
        linestyle="none", capsize=2, elinewidth=0.8,
    )


def _plot_bound(ax, table: SweepTable, series: BoundSeries) -> None:
    if series.column not in table.columns:
        raise ValueError(f"{table.path}: no column {series.column!r} for overlay {series.label!r}")
    vals = table.columns[series.column]
    mask = vals > 0
    ax.plot(table.snr_db[mask], vals[mask], series.linestyle,
            color=series.color, linewidth=1.2, label=series.label)


def render_figure(spec: FigureSpec) -> Path:
    """Render the figure and its manifest sidecar; returns the image path."""
    tables: dict[str, SweepTable] = {}
    for s in list(spec.sim_series) + list(spec.bound_series):
        if s.path not in tables:
            tables[s.path] = read_sweep_csv(s.path)

    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for b in spec.bound_series:
            _plot_bound(ax, tables[b.path], b)
        for s in spec.sim_series:
            _plot_sim(ax, tables[s.path], s)
        ax.set_yscale("log")
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)
        ax.set_title(spec.title)
        ax.legend(loc="lower left")
        out = Path(spec.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        manifests = {path: t.manifest for path, t in sorted(tables.items())}
        fig.savefig(
            out,
            metadata={"Manifests": json.dumps(manifests, sort_keys=True)},
        )
        plt.close(fig)

    sidecar = out.with_name(out.name + ".manifest.json")
    sidecar.write_text(
        json.dumps({"figure": out.name, "inputs": manifests}, sort_keys=True, indent=2),
        encoding="utf-8",
    )
    return out
