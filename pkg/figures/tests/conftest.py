import json
import math

import pytest


def make_sweep_csv(path, *, snr=(-4.0, 0.0, 4.0), sep=(0.2, 0.05, 0.004),
                   trials=10000, bounds=None, seed=1):
    """Write a miniature file in the documented sweep-CSV format."""
    manifest = {
        "config_path": "synthetic.yaml",
        "digest": f"{seed:016x}",
        "scenario": {"seed": seed, "trials": trials, "architecture": "simo_iid"},
        "seed": seed,
        "tool_version": "0.1.0",
    }
    cols = ["snr_db", "sep_mc", "ci_low", "ci_high", "errors", "trials"]
    bounds = bounds or {}
    cols += list(bounds)
    lines = [
        "# capa-sim sweep v0.1.0",
        "# generated_at: 2026-01-01T00:00:00Z",
        "# manifest: " + json.dumps(manifest, sort_keys=True),
        ",".join(cols),
    ]
    for i, (s, p) in enumerate(zip(snr, sep)):
        errors = round(p * trials)
        half = 1.96 * math.sqrt(max(p * (1 - p), 1e-12) / trials)
        row = [s, p, max(0.0, p - half), min(1.0, p + half), errors, trials]
        row += [bounds[name][i] for name in bounds]
        lines.append(",".join(str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def sweep_csv_factory():
    return make_sweep_csv
