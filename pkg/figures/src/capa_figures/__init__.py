"""Figure rendering for capa-sim sweep outputs."""

__version__ = "0.1.0"

from .io import SweepTable, read_sweep_csv
from .render import BoundSeries, FigureSpec, SimSeries, render_figure
from .presets import fig_los, fig_rayleigh, fig_rician

__all__ = [
    "BoundSeries", "FigureSpec", "SimSeries", "SweepTable", "fig_los",
    "fig_rayleigh", "fig_rician", "read_sweep_csv", "render_figure",
]
