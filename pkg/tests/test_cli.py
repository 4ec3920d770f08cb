import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from kdeassess.cli import main
from kdeassess.synthetic import synthetic_ocean


def write_geo(path, ds):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lat", "lon", "depth", "decade", "value"])
        for r in ds.records:
            w.writerow([repr(r.lat), repr(r.lon), repr(r.depth), r.decade, repr(r.value)])
    return path


@pytest.fixture
def values_csv(tmp_path):
    p = tmp_path / "vals.csv"
    x = np.random.default_rng(5).normal(-24, 2, 120)
    p.write_text("value\n" + "\n".join(repr(float(v)) for v in x) + "\n")
    return p


@pytest.fixture
def geo_files(tmp_path):
    model, field = synthetic_ocean(seed=3)
    return write_geo(tmp_path / "model.csv", model), write_geo(tmp_path / "field.csv", field)


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


class TestEstimate:
    def test_both_methods(self, values_csv, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert main(["estimate", "--input", str(values_csv), "--method", "both", "--points", "1024",
                     "--out", str(out)]) == 0
        rows = read_csv(out)
        assert rows[0] == ["x", "density_diff", "density_gauss"]
        assert len(rows) - 1 == 1025
        err = capsys.readouterr().err
        assert "diffusion" in err and "gaussian" in err and "integral=" in err

    def test_single_method_to_stdout(self, values_csv, capsys):
        assert main(["estimate", "--input", str(values_csv), "--method", "gauss", "--points", "64"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "x,density_gauss" and len(lines) == 66

    def test_nine_significant_digits(self, values_csv, capsys):
        main(["estimate", "--input", str(values_csv), "--method", "diff", "--points", "32"])
        row = capsys.readouterr().out.splitlines()[10].split(",")
        assert all(len(v.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 9 for v in row)

    def test_one_value(self, tmp_path, capsys):
        p = tmp_path / "one.csv"
        p.write_text("value\n-20\n")
        assert main(["estimate", "--input", str(p), "--method", "diff"]) == 1
        err = capsys.readouterr().err.strip()
        assert err.startswith("error:") and "at least 2" in err and "\n" not in err

    def test_empty_domain_is_usage_error(self, tmp_path, capsys):
        # validated before the (missing) input file is touched
        assert main(["estimate", "--input", str(tmp_path / "nope.csv"), "--lo", "5", "--hi", "5"]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error:") and "empty domain" in err

    def test_bad_flag(self, capsys):
        assert main(["estimate", "--method", "fft", "--input", "x.csv"]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_points_floor(self, values_csv):
        assert main(["estimate", "--input", str(values_csv), "--points", "8"]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["estimate", "--input", str(tmp_path / "nope.csv")]) == 1
        assert "nope.csv" in capsys.readouterr().err

    def test_out_of_domain(self, values_csv, capsys):
        assert main(["estimate", "--input", str(values_csv), "--lo", "-25", "--hi", "-20"]) == 1
        assert "outside" in capsys.readouterr().err


class TestCompare:
    def test_report_and_curves(self, geo_files, tmp_path):
        out = tmp_path / "rep.json"
        model, field = geo_files
        assert main(["compare", "--model", str(model), "--field", str(field), "--decade", "1990",
                     "--region", "euphotic", "--scenario", "masked", "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["config"]["region"] == "euphotic" and rep["config"]["scenario"] == "masked"
        assert rep["counts"]["model"] == rep["counts"]["field"]
        assert set(rep["errors"]) == {"diffusion", "gaussian"}
        assert set(rep["diagnostics"]["gaussian"]["model"]) >= {"smoothing", "raw_mass"}
        assert len(rep["curves"]["x"]) == 1025
        rows = read_csv(tmp_path / "rep_curves.csv")
        assert rows[0] == ["x", "model_diff", "field_diff", "model_gauss", "field_gauss"]
        assert len(rows) == 1026

    def test_identical_files(self, geo_files, tmp_path):
        model, _ = geo_files
        field = tmp_path / "same.csv"
        field.write_text(model.read_text())
        out = tmp_path / "rep.json"
        assert main(["compare", "--model", str(model), "--field", str(field), "--scenario", "full",
                     "--out", str(out)]) == 0
        errors = json.loads(out.read_text())["errors"]
        assert all(abs(v) <= 1e-12 for v in errors.values())

    def test_disjoint_masked(self, tmp_path, capsys):
        m, f = tmp_path / "m.csv", tmp_path / "f.csv"
        m.write_text("lat,lon,depth,decade,value\n0,0,5,1990,-20\n0,3.6,5,1990,-22\n")
        f.write_text("lat,lon,depth,decade,value\n30,0,5,1990,-20\n30,3.6,5,1990,-22\n")
        assert main(["compare", "--model", str(m), "--field", str(f), "--scenario", "masked",
                     "--out", str(tmp_path / "r.json")]) == 1
        assert "share no grid cells" in capsys.readouterr().err

    def test_depth_table(self, geo_files, tmp_path):
        levels = tmp_path / "levels.txt"
        levels.write_text("25\n85\n440\n")
        model, field = geo_files
        assert main(["compare", "--model", str(model), "--field", str(field), "--scenario", "masked",
                     "--depth-table", str(levels), "--out", str(tmp_path / "r.json")]) == 0

    def test_bad_region(self, geo_files, tmp_path):
        model, field = geo_files
        assert main(["compare", "--model", str(model), "--field", str(field), "--scenario", "full",
                     "--region", "arctic", "--out", str(tmp_path / "r.json")]) == 2

    def test_scenario_required(self, geo_files, tmp_path):
        model, field = geo_files
        assert main(["compare", "--model", str(model), "--field", str(field),
                     "--out", str(tmp_path / "r.json")]) == 2


class TestSuite:
    def run(self, geo_files, out, scenario="full"):
        model, field = geo_files
        return main(["suite", "--model", str(model), "--field", str(field), "--scenario", scenario,
                     "--out", str(out)])

    def test_index(self, geo_files, tmp_path):
        out = tmp_path / "suite"
        assert self.run(geo_files, out) == 0
        rows = read_csv(out / "index.csv")
        assert rows[0] == ["region", "status", "n_model", "n_field", "error_diff", "error_gauss", "message"]
        assert [r[0] for r in rows[1:]] == ["all", "euphotic", "euphotic-ex-so", "euphotic-so"]
        n = {r[0]: (int(r[2]), int(r[3])) for r in rows[1:]}
        for i in range(2):
            assert n["euphotic"][i] == n["euphotic-ex-so"][i] + n["euphotic-so"][i]
        for label in ("all", "euphotic", "euphotic-ex-so", "euphotic-so"):
            assert (out / f"report_{label}.json").exists()
            assert (out / f"curves_{label}.csv").exists()

    def test_partial_failure(self, tmp_path):
        m, f = tmp_path / "m.csv", tmp_path / "f.csv"
        m.write_text("lat,lon,depth,decade,value\n0,0,5,1990,-20\n0,3.6,5,1990,-22\n-60,0,5,1990,-27\n"
                     "-60,3.6,5,1990,-28\n")
        f.write_text("lat,lon,depth,decade,value\n0,0,5,1990,-21\n0,3.6,5,1990,-22.5\n-60,50,5,1990,-26\n")
        out = tmp_path / "suite"
        assert self.run((m, f), out, "masked") == 0
        rows = {r[0]: r for r in read_csv(out / "index.csv")[1:]}
        assert rows["euphotic-so"][1] == "empty-intersection"
        assert rows["all"][1] == "ok"
        assert not (out / "report_euphotic-so.json").exists()

    def test_all_regions_fail(self, tmp_path):
        m, f = tmp_path / "m.csv", tmp_path / "f.csv"
        m.write_text("lat,lon,depth,decade,value\n0,0,5,1990,-20\n0,3.6,5,1990,-22\n")
        f.write_text("lat,lon,depth,decade,value\n30,0,5,1990,-21\n")
        assert self.run((m, f), tmp_path / "suite", "masked") == 1


def test_module_entry_point(values_csv):
    res = subprocess.run([sys.executable, "-m", "kdeassess", "estimate", "--input", str(values_csv),
                          "--method", "gauss", "--points", "16"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "x,density_gauss"
