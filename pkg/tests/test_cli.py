import json
from pathlib import Path

import pytest

from capasim.cli import main

NOMINAL_APERTURE_YAML = """\
aperture:
  lx_m: 0.5
  lz_m: 0.5
  carrier_freq_hz: 2.4e9
  grid_points_per_axis: 32
"""


def write_config(tmp_path, name="sc.yaml", *, architecture="simo_iid",
                 regime="rayleigh", extra="", grid="[-4, 0, 4]",
                 trials=20000, aperture=False):
    text = (
        "schema_version: 1\n"
        f"architecture: {architecture}\n"
        f"channel_regime: {regime}\n"
        f"{extra}"
        "n_branches: 8\n"
        f"{NOMINAL_APERTURE_YAML if aperture else ''}"
        f"snr_grid_db: {grid}\n"
        f"trials: {trials}\n"
        "seed: 321\n"
        "quantization: one_bit\n"
    )
    path = tmp_path / name
    path.write_text(text)
    return path


def read_csv(path):
    header = []
    rows = []
    cols = None
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            header.append(line)
        elif cols is None:
            cols = line.split(",")
        else:
            rows.append(line.split(","))
    return header, cols, rows


def manifest_of(header):
    for line in header:
        if line.startswith("# manifest: "):
            return json.loads(line[len("# manifest: "):])
    raise AssertionError("no manifest header line")


class TestVersion:
    def test_prints_version(self, capsys):
        assert main(["version"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("capa-sim ")


class TestSweepCommand:
    def test_csv_structure_and_manifest(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out), "--threads", "2"]) == 0
        header, cols, rows = read_csv(out)
        assert cols[:6] == ["snr_db", "sep_mc", "ci_low", "ci_high", "errors", "trials"]
        assert "bound_simo_rayleigh_exact" in cols
        assert len(rows) == 3
        for row in rows:
            for field in row:
                float(field)  # locale-independent plain numbers
        man = manifest_of(header)
        assert man["scenario"]["seed"] == 321
        assert man["scenario"]["trials"] == 20000
        assert man["tool_version"]

    def test_manifest_reproduces_run(self, tmp_path):
        # A scenario rebuilt from the embedded manifest gives the same rows.
        import yaml

        cfg = write_config(tmp_path)
        out1 = tmp_path / "a.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out1), "--bounds", "none"]) == 0
        header, _, rows1 = read_csv(out1)
        scenario_dict = manifest_of(header)["scenario"]
        cfg2 = tmp_path / "roundtrip.yaml"
        cfg2.write_text(yaml.safe_dump(scenario_dict))
        out2 = tmp_path / "b.csv"
        assert main(["sweep", "--config", str(cfg2), "--out", str(out2), "--bounds", "none"]) == 0
        assert rows1 == read_csv(out2)[2]

    def test_byte_identical_with_pinned_timestamp(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1750000000")
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out1), "--bounds", "none"]) == 0
        assert main(["sweep", "--config", str(cfg), "--out", str(out2), "--bounds", "none"]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_overrides_take_precedence(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CAPASIM_SEED", "999")
        cfg = write_config(tmp_path)
        out = tmp_path / "o.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out),
                     "--trials", "4096", "--bounds", "none"]) == 0
        man = manifest_of(read_csv(out)[0])
        assert man["scenario"]["seed"] == 999
        assert man["scenario"]["trials"] == 4096

    def test_flag_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CAPASIM_SEED", "999")
        cfg = write_config(tmp_path)
        out = tmp_path / "o.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out),
                     "--seed", "555", "--trials", "4096", "--bounds", "none"]) == 0
        assert manifest_of(read_csv(out)[0])["scenario"]["seed"] == 555

    def test_parse_error_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("schema_version: [1\n")
        assert main(["sweep", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
        assert "config error" in capsys.readouterr().err

    def test_missing_field_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("schema_version: 1\narchitecture: simo_iid\n")
        assert main(["sweep", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
        assert "channel_regime" in capsys.readouterr().err

    def test_invalid_scenario_exits_3_and_names_constraint(self, tmp_path, capsys):
        cfg = tmp_path / "sc.yaml"
        cfg.write_text(
            "schema_version: 1\n"
            "architecture: capa\n"
            "channel_regime: rayleigh\n"
            "n_branches: 80\n"
            + NOMINAL_APERTURE_YAML +
            "snr_grid_db: [0]\n"
            "trials: 10\n"
            "seed: 1\n"
        )
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 3
        err = capsys.readouterr().err
        assert "degrees of freedom" in err and "64" in err

    def test_unknown_preset_exits_2(self, tmp_path, capsys):
        assert main(["sweep", "--preset", "nope", "--out", str(tmp_path)]) == 2
        assert "fig-los" in capsys.readouterr().err

    def test_preset_writes_one_csv_per_scenario(self, tmp_path):
        out = tmp_path / "los"
        assert main(["sweep", "--preset", "fig-los", "--out", str(out),
                     "--trials", "4096", "--threads", "2"]) == 0
        names = sorted(p.name for p in out.glob("*.csv"))
        assert names == [
            "los_capa_aligned.csv",
            "los_capa_aligned_unq.csv",
            "los_capa_misaligned.csv",
            "los_simo.csv",
            "los_simo_unq.csv",
        ]
        header, cols, rows = read_csv(out / "los_simo.csv")
        assert "bound_simo_los_binomial" in cols
        assert "bound_capa_los_awgn" in cols
        assert len(rows) == 15


class TestEigenCommand:
    def test_nominal_geometry_report(self, tmp_path, capsys):
        cfg = write_config(tmp_path, architecture="capa", aperture=True)
        out = tmp_path / "eigen.csv"
        assert main(["eigen", "--config", str(cfg), "--out", str(out)]) == 0
        assert "M/D = 12.5%" in capsys.readouterr().out
        header, cols, rows = read_csv(out)
        assert cols == ["mode_index", "eigenvalue", "los_power", "cumulative_energy_fraction"]
        assert len(rows) == 8
        eigensum = sum(float(r[1]) for r in rows)
        assert eigensum == pytest.approx(8.0, abs=1e-10)
        assert float(rows[-1][3]) == pytest.approx(1.0, abs=1e-12)

    def test_minimal_geometry_uses_all_modes(self, tmp_path, capsys):
        cfg = tmp_path / "min.yaml"
        cfg.write_text(
            "schema_version: 1\n"
            "architecture: capa\n"
            "channel_regime: rayleigh\n"
            "n_branches: 8\n"
            "aperture:\n"
            "  lx_m: 0.17677669529663687\n"
            "  lz_m: 0.17677669529663687\n"
            "  carrier_freq_hz: 2.4e9\n"
            "  grid_points_per_axis: 32\n"
            "snr_grid_db: [0]\n"
            "trials: 10\n"
            "seed: 1\n"
        )
        assert main(["eigen", "--config", str(cfg), "--out", str(tmp_path / "e.csv")]) == 0
        assert "M/D = 100%" in capsys.readouterr().out

    def test_simo_rejected(self, tmp_path):
        cfg = write_config(tmp_path)
        assert main(["eigen", "--config", str(cfg), "--out", str(tmp_path / "e.csv")]) == 3


class TestBoundsCommand:
    def test_rayleigh_capa_emits_mma_and_reference(self, tmp_path):
        cfg = write_config(tmp_path, architecture="capa", aperture=True, grid="[-4, 0]")
        out = tmp_path / "b.csv"
        assert main(["bounds", "--config", str(cfg), "--out", str(out)]) == 0
        header, cols, rows = read_csv(out)
        kinds = {r[0] for r in rows}
        assert kinds == {"capa_mma_gamma", "simo_rayleigh_exact"}
        assert any("over-optimistic" in line for line in header)

    def test_pure_los_emits_both_closed_forms(self, tmp_path):
        cfg = write_config(tmp_path, regime="pure_los", grid="[-4, 0]")
        out = tmp_path / "b.csv"
        assert main(["bounds", "--config", str(cfg), "--out", str(out)]) == 0
        kinds = {r[0] for r in read_csv(out)[2]}
        assert kinds == {"simo_los_binomial", "capa_los_awgn", "unquantized_awgn_ref"}

    def test_rician_refused_exit_4(self, tmp_path, capsys):
        cfg = write_config(tmp_path, regime="rician", extra="k_db: 8\n", grid="[0]")
        assert main(["bounds", "--config", str(cfg), "--out", str(tmp_path / "b.csv")]) == 4
        err = capsys.readouterr().err
        assert "rician" in err and "simulation" in err
