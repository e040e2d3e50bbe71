import math
import os

import pytest

from figgen.cli import main
from figgen.io import ScanFile, ScanFileError
from figgen.render import render_scaling, scaling_fit

SAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "samples")
F_SCAN = os.path.join(SAMPLES, "fscan_o22_double.csv")
SCALING = os.path.join(SAMPLES, "scaling_o21_naive.csv")


def test_load_sample():
    scan = ScanFile.load(F_SCAN)
    assert len(scan.rows) == 20
    assert all(r.converged for r in scan.rows)
    assert all(abs(r.value - 1.0) < 1e-5 for r in scan.rows)


def test_load_rejects_bad_input(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("a,value,err_est,n_evals,converged\n")
    with pytest.raises(ScanFileError):
        ScanFile.load(str(empty))
    with pytest.raises(ScanFileError):
        ScanFile.load(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("wrong,header\n1,2\n")
    with pytest.raises(ScanFileError):
        ScanFile.load(str(bad))
    nonfinite = tmp_path / "nf.csv"
    nonfinite.write_text("a,value,err_est,n_evals,converged\n"
                         "1.0,nan,0.0,5,true\n")
    with pytest.raises(ScanFileError):
        ScanFile.load(str(nonfinite))


def test_render_f_scan_cli(tmp_path):
    out = tmp_path / "f.png"
    assert main(["f-scan", F_SCAN, str(out)]) == 0
    assert out.stat().st_size > 0


def test_render_f_scan_marks_unconverged(tmp_path):
    src = tmp_path / "mix.csv"
    src.write_text("a,value,err_est,n_evals,converged\n"
                   "0.5,1.0,1e-9,100,true\n"
                   "1.0,1.02,1e-2,100,false\n"
                   "2.0,1.0,1e-9,100,true\n")
    out = tmp_path / "mix.png"
    assert main(["f-scan", str(src), str(out)]) == 0
    assert out.stat().st_size > 0


def test_render_scaling_cli(tmp_path):
    out = tmp_path / "s.png"
    assert main(["scaling", SCALING, str(out)]) == 0
    assert out.stat().st_size > 0


def test_scaling_slope_annotation_value(tmp_path):
    slope = render_scaling(SCALING, str(tmp_path / "s.png"))
    assert slope == pytest.approx(-0.5, abs=0.05)


def test_scaling_pure_power_law(tmp_path):
    src = tmp_path / "p.csv"
    rows = ["a,value,err_est,n_evals,converged"]
    for x in (0.1, 0.2, 0.4, 0.8):
        rows.append(f"{x},{3.0 * x ** -1.5},0.0,1,true")
    src.write_text("\n".join(rows) + "\n")
    slope = render_scaling(str(src), str(tmp_path / "p.png"))
    assert slope == pytest.approx(-1.5, abs=1e-12)
    intercept, _ = scaling_fit([0.1, 0.2], [2.0 * 0.1, 2.0 * 0.2])
    assert math.exp(intercept) == pytest.approx(2.0)


def test_scaling_single_point_rejected(tmp_path):
    src = tmp_path / "one.csv"
    src.write_text("a,value,err_est,n_evals,converged\n1.0,1.0,0.0,1,true\n")
    assert main(["scaling", str(src), str(tmp_path / "one.png")]) == 1


def test_deterministic_regeneration(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert main(["f-scan", F_SCAN, str(a)]) == 0
    assert main(["f-scan", F_SCAN, str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c, d = tmp_path / "c.png", tmp_path / "d.png"
    assert main(["scaling", SCALING, str(c)]) == 0
    assert main(["scaling", SCALING, str(d)]) == 0
    assert c.read_bytes() == d.read_bytes()


def test_cli_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bogus", "x.csv", "y.png"])
    assert exc.value.code == 2
