import json
import os

import pytest

from hyperhs.cli import main


def run(argv):
    # argparse reports its own usage errors via SystemExit(2)
    try:
        return main(list(argv))
    except SystemExit as exc:
        return exc.code


# ----------------------------------------------------------------------
# f-scan


def test_f_scan_o21_csv(tmp_path):
    out = tmp_path / "scan.csv"
    rc = run(["f-scan", "o21", "--points", "5", "--out", str(out)])
    assert rc == 0
    lines = out.read_bytes().split(b"\n")
    assert lines[0] == b"a,value,err_est,n_evals,converged"
    rows = [l for l in lines[1:] if l]
    assert len(rows) == 5
    for row in rows:
        a, value, err, n_evals, conv = row.decode().split(",")
        assert conv in ("true", "false")
        assert abs(float(value) - 1.0) < 1e-6
        int(n_evals)
    assert b"\r" not in out.read_bytes()


def test_f_scan_deterministic_across_threads(tmp_path):
    outs = []
    for threads in ("1", "3"):
        out = tmp_path / f"scan{threads}.csv"
        os.environ["HYPERHS_THREADS"] = threads
        try:
            assert run(["f-scan", "o3", "--points", "7", "--out",
                        str(out)]) == 0
        finally:
            os.environ.pop("HYPERHS_THREADS", None)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_f_scan_custom_grid(tmp_path):
    out = tmp_path / "g.csv"
    rc = run(["f-scan", "o21", "--a-min", "1.0", "--a-max", "2.0",
              "--points", "3", "--out", str(out)])
    assert rc == 0
    rows = out.read_text().strip().split("\n")[1:]
    xs = [float(r.split(",")[0]) for r in rows]
    # the o21 grid is log spaced
    assert xs == pytest.approx([1.0, 2.0 ** 0.5, 2.0])


def test_f_scan_usage_errors(tmp_path):
    assert run(["f-scan", "nope"]) == 2
    assert run(["f-scan", "o21", "--points", "0",
                "--out", str(tmp_path / "x.csv")]) == 2
    assert not (tmp_path / "x.csv").exists()


def test_f_scan_budget_exhaustion(tmp_path):
    out = tmp_path / "b.csv"
    rc = run(["f-scan", "o21", "--points", "2", "--max-evals", "10",
              "--out", str(out)])
    assert rc == 3


# ----------------------------------------------------------------------
# verify


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_verify_o11_conjectured(tmp_path):
    out = tmp_path / "v.json"
    rc = run(["verify", "o11", "conjectured", "--out", str(out)])
    assert rc == 0
    doc = read_json(out)
    for key in ("case", "measure", "grid", "ratios", "const_est",
                "max_rel_dev", "pass", "config_echo"):
        assert key in doc
    assert doc["pass"] is True
    assert doc["max_rel_dev"] < 1e-3
    assert {"re", "im"} <= set(doc["const_est"])
    assert all({"re", "im"} <= set(r) for r in doc["ratios"])


def test_verify_o11_naive_expected_fail(tmp_path):
    out = tmp_path / "vn.json"
    rc = run(["verify", "o11", "naive", "--out", str(out)])
    assert rc == 0
    doc = read_json(out)
    assert doc["pass"] is False
    assert doc["max_rel_dev"] > 0.05


def test_verify_o11_custom_grid_inadmissible(tmp_path):
    rc = run(["verify", "o11", "conjectured", "--grid", "1,1,2",
              "--out", str(tmp_path / "x.json")])
    assert rc == 2


def test_verify_o21_special_both_measures(tmp_path):
    for measure, want_pass in (("conjectured", True), ("naive", False)):
        out = tmp_path / f"o21-{measure}.json"
        rc = run(["verify", "o21-special", measure, "--out", str(out)])
        assert rc == 0
        assert read_json(out)["pass"] is want_pass


def test_verify_o3_tail(tmp_path):
    out = tmp_path / "o3.json"
    rc = run(["verify", "o3-tail", "conjectured", "--out", str(out)])
    assert rc == 0
    doc = read_json(out)
    assert doc["pass"] is True
    assert run(["verify", "o3-tail", "naive"]) == 2


def test_verify_o22_special(tmp_path):
    out = tmp_path / "o22.json"
    rc = run(["verify", "o22-special", "conjectured", "--out", str(out)])
    assert rc == 0
    assert read_json(out)["pass"] is True
    assert run(["verify", "o22-special", "naive"]) == 2


# ----------------------------------------------------------------------
# scaling


def test_scaling_o21_naive(tmp_path):
    out = tmp_path / "s.json"
    rc = run(["scaling", "o21-naive", "--out", str(out)])
    assert rc == 0
    doc = read_json(out)
    assert doc["pass"] is True
    assert abs(doc["coefficients"][1] + 0.5) < 0.05


def test_scaling_o22_naive(tmp_path):
    out = tmp_path / "s22.json"
    rc = run(["scaling", "o22-naive", "--out", str(out)])
    assert rc == 0
    doc = read_json(out)
    assert doc["pass"] is True
    assert abs(doc["coefficients"][1]) > 10.0 * doc["stderrs"][1]


def test_scaling_single_point_rejected():
    assert run(["scaling", "o21-naive", "--points", "1"]) == 2


# ----------------------------------------------------------------------
# selftest


def test_selftest_passes(capsys):
    assert run(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "polar-jacobian-fd" in out


def test_selftest_fault_hook(capsys):
    assert run(["selftest", "--fault-polar-jacobian"]) == 1
    out = capsys.readouterr().out
    assert "polar-jacobian-fd" in out
    assert "failed checks" in out


def test_selftest_budget(capsys):
    assert run(["selftest", "--max-evals", "10"]) == 3


def test_usage_no_command():
    assert run([]) == 2
