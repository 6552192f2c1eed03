import csv
import json
import os

import numpy as np
import pytest

from diatomic.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_SOLVER, main, read_field_csv
from diatomic.errors import CsvFormatError


def run(*argv):
    return main([str(a) for a in argv])


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_simulate_exact_delta_at_zero(tmp_path):
    out = tmp_path / "s.csv"
    assert run("simulate", "--method", "exact", "--omega", 1, "--alpha", 0.3, "--m", 0,
               "--z-max", 100, "--z-steps", 1000, "--window", 40, "-o", out) == EXIT_OK
    header, rows = load(out)
    assert header == ["z", "n", "re", "im", "intensity"]
    assert len(rows) == 1001 * 81
    for z, n, re, im, inten in rows[:81]:
        assert float(z) == 0.0
        assert float(inten) == pytest.approx(1.0 if int(n) == 0 else 0.0, abs=1e-14)


def test_simulate_uncoupled(tmp_path):
    out = tmp_path / "s.csv"
    assert run("simulate", "--alpha", 0, "--m", 2, "--z-steps", 20, "-o", out) == EXIT_OK
    _, rows = load(out)
    assert all(float(r[4]) == 0.0 for r in rows if int(r[1]) != 2)


@pytest.mark.parametrize("method", ["exact", "rotation", "rs", "ode"])
def test_simulate_each_method(tmp_path, method):
    out = tmp_path / f"{method}.csv"
    assert run("simulate", "--method", method, "--z-max", 5, "--z-steps", 10,
               "--window", 5, "-o", out) == EXIT_OK
    traces = read_field_csv(out)
    assert sorted(traces) == list(range(-5, 6))
    assert traces[0][1][0] == pytest.approx(1.0, abs=1e-10)


def test_byte_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run("simulate", "--method", "rotation", "--z-steps", 50, "-o", path)
    assert a.read_bytes() == b.read_bytes()
    ra, rb = tmp_path / "a.json", tmp_path / "b.json"
    for path in (ra, rb):
        run("compare", "--method-b", "rs", "--z-steps", 50, "-o", path)
    assert ra.read_bytes() == rb.read_bytes()


def test_csv_full_precision(tmp_path):
    out = tmp_path / "s.csv"
    run("simulate", "--z-max", 3, "--z-steps", 3, "--window", 2, "-o", out)
    from diatomic.analysis import solve
    from diatomic.model import LatticeParams

    _, rows = load(out)
    amps = solve("exact", LatticeParams(1.0, 0.3), 0, [0.0, 1.0, 2.0, 3.0], 2)
    parsed = np.array([complex(float(r[2]), float(r[3])) for r in rows]).reshape(4, 5)
    assert np.array_equal(parsed, amps)


def test_compare_report(tmp_path):
    out = tmp_path / "r.json"
    assert run("compare", "--method-a", "exact", "--method-b", "exact", "--z-steps", 20,
               "-o", out) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["global_max_intensity_error"] == 0
    assert report["method_a"] == report["method_b"] == "exact"


def test_compare_rs_growth(tmp_path):
    out = tmp_path / "r.json"
    assert run("compare", "--method-b", "rs", "--rs-order", 3, "--window", 5, "-o", out) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["global_max_intensity_error"] > 0.2


def test_sweep(tmp_path):
    out = tmp_path / "s.json"
    assert run("sweep", "--alphas", "0.05,0.1", "--z-steps", 100, "--window", 10,
               "-o", out) == EXIT_OK
    data = json.loads(out.read_text())["global_max_intensity_error"]
    assert data["0.05"] <= data["0.1"]


def test_config_errors(tmp_path, capsys):
    out = tmp_path / "x.csv"
    assert run("simulate", "--omega", 0, "-o", out) == EXIT_CONFIG
    assert run("simulate", "--m", 20, "--window", 3, "-o", out) == EXIT_CONFIG
    assert run("simulate", "--rs-order", 13, "--method", "rs", "-o", out) == EXIT_CONFIG
    assert not out.exists()
    assert "configuration error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        run("simulate", "--method", "bogus")
    assert info.value.code == EXIT_CONFIG


def test_solver_error_leaves_no_file(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code = run("simulate", "--method", "ode", "--ode-window", 3, "--window", 3,
               "--z-max", 10, "--z-steps", 2, "--step", 0.01, "-o", out)
    assert code == EXIT_SOLVER
    assert not out.exists()
    assert os.listdir(tmp_path) == []
    assert "z=5.0" in capsys.readouterr().err


def test_io_error(tmp_path):
    assert run("simulate", "--z-steps", 2, "-o", tmp_path / "missing" / "x.csv") == EXIT_IO
    assert run("plot", tmp_path / "nope.csv", "-o", tmp_path / "p.svg") == EXIT_IO


def test_plot_round_trip(tmp_path):
    data = tmp_path / "s.csv"
    svg = tmp_path / "p.svg"
    run("simulate", "--z-steps", 100, "-o", data)
    assert run("plot", data, "--guides", "0:10", "-o", svg) == EXIT_OK
    text = svg.read_text()
    assert text.startswith("<svg") and 'width="800" height="500"' in text
    assert text.count("<polyline") == 11
    for n in range(11):
        assert f"n = {n}<" in text
    assert ">z<" in text and "|u_n|^2" in text


def test_plot_overlay_dashed(tmp_path):
    a, b, svg = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "p.svg"
    run("simulate", "--alpha", 0.1, "--z-steps", 100, "-o", a)
    run("simulate", "--method", "rotation", "--alpha", 0.1, "--z-steps", 100, "-o", b)
    assert run("plot", a, "--overlay", b, "--guides", "0,1,2", "-o", svg) == EXIT_OK
    text = svg.read_text()
    assert text.count("stroke-dasharray") == 3
    assert text.count("<polyline") == 6


def test_plot_single_z(tmp_path):
    data, svg = tmp_path / "s.csv", tmp_path / "p.svg"
    data.write_text("z,n,re,im,intensity\n0.0,-1,0.0,0.0,0.0\n0.0,0,1.0,0.0,1.0\n0.0,1,0.0,0.0,0.0\n")
    assert run("plot", data, "--guides=-1:1", "-o", svg) == EXIT_OK
    text = svg.read_text()
    assert text.count("<circle") == 3


@pytest.mark.parametrize(
    "content, line",
    [
        ("a,b\n", 1),
        ("z,n,re,im,intensity\n0,0,1,0,1\n0,1,0,0\n", 3),
        ("z,n,re,im,intensity\n0,0,1,0,1\n0,x,0,0,0\n", 3),
        ("z,n,re,im,intensity\n", 2),
    ],
)
def test_malformed_csv(tmp_path, content, line):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(CsvFormatError) as info:
        read_field_csv(path)
    assert info.value.line == line
    assert run("plot", path, "-o", tmp_path / "p.svg") == EXIT_IO
    assert not (tmp_path / "p.svg").exists()


def test_figures(tmp_path):
    assert run("figures", "--outdir", tmp_path, "--z-steps", 100) == EXIT_OK
    names = sorted(os.listdir(tmp_path))
    assert names == sorted([
        "fig1.svg", "fig1_exact.csv", "fig2.svg", "fig2_exact.csv", "fig2_rotation.csv",
        "fig3.svg", "fig3_exact.csv", "fig3_rotation.csv", "fig4.svg", "fig4_exact.csv",
        "fig4_rs.csv",
    ])
    assert (tmp_path / "fig4.svg").read_text().count("stroke-dasharray") == 2
