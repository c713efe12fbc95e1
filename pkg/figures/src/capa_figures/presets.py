"""Figure specs for the three standard sweep-preset directories.

Each builder maps the CSV files produced by the matching ``capa-sim sweep
--preset`` run onto one comparison plot.
"""

from __future__ import annotations

from pathlib import Path

from .render import BoundSeries, FigureSpec, SimSeries

CAPA_COLOR = "#1f77b4"
CAPA_ALT_COLOR = "#17becf"
SIMO_COLOR = "#d62728"
SIMO_ALT_COLOR = "#ff7f0e"
UNQ_COLOR = "#2ca02c"
MIS_COLOR = "#9467bd"


def fig_rayleigh(in_dir: str | Path, out_path: str | Path) -> FigureSpec:
    d = Path(in_dir)
    return FigureSpec(
        title="Rayleigh scattering, 1-bit ADCs (8 branches)",
        out_path=str(out_path),
        sim_series=(
            SimSeries(str(d / "rayleigh_capa_a0250.csv"), "aperture 0.25 m$^2$", CAPA_COLOR, "o"),
            SimSeries(str(d / "rayleigh_capa_a0031.csv"), "aperture 0.03125 m$^2$", CAPA_ALT_COLOR, "s"),
            SimSeries(str(d / "rayleigh_simo_n8.csv"), "discrete iid array", SIMO_COLOR, "^"),
        ),
        bound_series=(
            BoundSeries(str(d / "rayleigh_capa_a0250.csv"), "bound_capa_mma_gamma",
                        "Gamma moment match (0.25 m$^2$)", CAPA_COLOR, "--"),
            BoundSeries(str(d / "rayleigh_capa_a0031.csv"), "bound_capa_mma_gamma",
                        "Gamma moment match (0.03125 m$^2$)", CAPA_ALT_COLOR, "--"),
            BoundSeries(str(d / "rayleigh_simo_n8.csv"), "bound_simo_rayleigh_exact",
                        "exact discrete-array form", SIMO_COLOR, "-"),
        ),
    )


def fig_rician(in_dir: str | Path, out_path: str | Path) -> FigureSpec:
    d = Path(in_dir)
    return FigureSpec(
        title="Rician fading, 1-bit ADCs (8 branches)",
        out_path=str(out_path),
        sim_series=(
            SimSeries(str(d / "rician_capa_k2db.csv"), "aperture, K = 2 dB", CAPA_COLOR, "o"),
            SimSeries(str(d / "rician_capa_k8db.csv"), "aperture, K = 8 dB", CAPA_ALT_COLOR, "s"),
            SimSeries(str(d / "rician_simo_k2db.csv"), "discrete, K = 2 dB", SIMO_COLOR, "^"),
            SimSeries(str(d / "rician_simo_k8db.csv"), "discrete, K = 8 dB", SIMO_ALT_COLOR, "v"),
            SimSeries(str(d / "rician_capa_unq_k8db.csv"), "aperture, K = 8 dB, unquantized", UNQ_COLOR, "d"),
            SimSeries(str(d / "rician_simo_unq_k8db.csv"), "discrete, K = 8 dB, unquantized", "#8c564b", "x"),
        ),
    )


def fig_los(in_dir: str | Path, out_path: str | Path) -> FigureSpec:
    d = Path(in_dir)
    return FigureSpec(
        title="Pure line-of-sight, 1-bit ADCs (8 branches)",
        out_path=str(out_path),
        sim_series=(
            SimSeries(str(d / "los_capa_aligned.csv"), "aperture, aligned", CAPA_COLOR, "o"),
            SimSeries(str(d / "los_capa_aligned_unq.csv"), "aperture, aligned, unquantized", UNQ_COLOR, "d"),
            SimSeries(str(d / "los_capa_misaligned.csv"), "aperture, misaligned 3$^\\circ$", MIS_COLOR, "s"),
            SimSeries(str(d / "los_simo.csv"), "discrete array", SIMO_COLOR, "^"),
            SimSeries(str(d / "los_simo_unq.csv"), "discrete array, unquantized", SIMO_ALT_COLOR, "x"),
        ),
        bound_series=(
            BoundSeries(str(d / "los_capa_aligned.csv"), "bound_capa_los_awgn",
                        "aligned-aperture AWGN form", CAPA_COLOR, "-"),
            BoundSeries(str(d / "los_simo.csv"), "bound_simo_los_binomial",
                        "majority-vote binomial form", SIMO_COLOR, "-"),
            BoundSeries(str(d / "los_simo.csv"), "bound_unquantized_awgn_ref",
                        "unquantized AWGN reference", UNQ_COLOR, ":"),
        ),
    )


PRESET_BUILDERS = {
    "fig-rayleigh": fig_rayleigh,
    "fig-rician": fig_rician,
    "fig-los": fig_los,
}
