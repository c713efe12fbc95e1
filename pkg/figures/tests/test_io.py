import pytest

from capa_figures.io import read_sweep_csv


def test_parses_columns_and_manifest(tmp_path, sweep_csv_factory):
    p = sweep_csv_factory(tmp_path / "a.csv", bounds={"bound_x": (0.3, 0.06, 0.005)})
    table = read_sweep_csv(p)
    assert table.manifest["seed"] == 1
    assert table.trials == 10000
    assert list(table.snr_db) == [-4.0, 0.0, 4.0]
    assert table.bound_columns() == ["bound_x"]
    assert table.columns["errors"][0] == 2000


def test_missing_file_names_path(tmp_path):
    missing = tmp_path / "nope.csv"
    with pytest.raises(FileNotFoundError, match="nope.csv"):
        read_sweep_csv(missing)


def test_rejects_file_without_manifest(tmp_path):
    p = tmp_path / "raw.csv"
    p.write_text("snr_db,sep_mc\n0,0.1\n")
    with pytest.raises(ValueError, match="manifest"):
        read_sweep_csv(p)


def test_rejects_empty_grid(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text('# manifest: {"seed": 1}\nsnr_db,sep_mc\n')
    with pytest.raises(ValueError, match="no data rows"):
        read_sweep_csv(p)
