"""Reader for capa-sim sweep CSVs.

The files are self-describing: '#'-prefixed header lines carry a one-line
JSON manifest with the resolved scenario, followed by a column-name row and
plain numeric rows.  This package consumes those files only; no SEP math is
recomputed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MANIFEST_PREFIX = "# manifest: "


@dataclass(frozen=True)
class SweepTable:
    """One parsed sweep CSV: manifest plus named numeric columns."""

    path: str
    manifest: dict
    columns: dict[str, np.ndarray] = field(repr=False)

    @property
    def snr_db(self) -> np.ndarray:
        return self.columns["snr_db"]

    @property
    def sep(self) -> np.ndarray:
        return self.columns["sep_mc"]

    @property
    def trials(self) -> int:
        return int(self.columns["trials"][0])

    def bound_columns(self) -> list[str]:
        return [c for c in self.columns if c.startswith("bound_")]


def read_sweep_csv(path: str | Path) -> SweepTable:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"missing input series: {path}")
    manifest = None
    names: list[str] | None = None
    rows: list[list[float]] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith(MANIFEST_PREFIX):
            manifest = json.loads(line[len(MANIFEST_PREFIX):])
        elif line.startswith("#") or not line.strip():
            continue
        elif names is None:
            names = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    if manifest is None:
        raise ValueError(f"{path}: no manifest header line; not a capa-sim output file")
    if names is None or not rows:
        raise ValueError(f"{path}: no data rows (empty SNR grid)")
    data = np.asarray(rows, dtype=float)
    columns = {name: data[:, i] for i, name in enumerate(names)}
    return SweepTable(path=str(path), manifest=manifest, columns=columns)
