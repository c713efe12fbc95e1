"""One console entry per figure preset: read sweep CSVs, write the plot."""

from __future__ import annotations

import argparse
import sys

from .presets import PRESET_BUILDERS


def _run(preset: str, argv: list[str] | None) -> int:
    parser = argparse.ArgumentParser(
        prog=f"capa-{preset}",
        description=f"Render the {preset} comparison plot from capa-sim sweep CSVs",
    )
    parser.add_argument("--in-dir", required=True,
                        help=f"directory written by 'capa-sim sweep --preset {preset}'")
    parser.add_argument("--out", required=True, help="output image path (png)")
    args = parser.parse_args(argv)
    from .render import render_figure

    try:
        out = render_figure(PRESET_BUILDERS[preset](args.in_dir, args.out))
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main_rayleigh(argv: list[str] | None = None) -> int:
    return _run("fig-rayleigh", argv)


def main_rician(argv: list[str] | None = None) -> int:
    return _run("fig-rician", argv)


def main_los(argv: list[str] | None = None) -> int:
    return _run("fig-los", argv)
