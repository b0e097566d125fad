"""Command-line behaviour: tables, determinism and exit codes."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from fracdiff import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestDifferint:
    def test_closed_step_half_derivative(self, capsys):
        code, out, _ = run(["differint", "--kernel", "step", "--order", "0.5", "--grid", "0.1:5:50",
                            "--method", "closed"], capsys)
        assert code == 0
        table = rows(out)
        assert len(table) == 50
        assert float(table[0]["x"]) == pytest.approx(0.1) and float(table[-1]["x"]) == pytest.approx(5)
        for r in table:
            assert float(r["re"]) == pytest.approx(1 / math.sqrt(math.pi * float(r["x"])), rel=1e-14)
            assert float(r["im"]) == 0

    def test_order_zero_is_constant(self, capsys):
        code, out, _ = run(["differint", "--order", "0", "--grid", "0.5:3:6"], capsys)
        assert code == 0
        assert all(float(r["re"]) == 1.0 for r in rows(out))

    def test_bromwich_within_bound_of_closed(self, capsys):
        grid = ["--grid", "0.5:2:7", "--kernel", "step", "--order", "0.25"]
        _, closed, _ = run(["differint", *grid, "--method", "closed"], capsys)
        _, brom, _ = run(["differint", *grid, "--method", "bromwich"], capsys)
        for c, b in zip(rows(closed), rows(brom)):
            assert abs(float(c["re"]) - float(b["re"])) <= float(b["error_bound"])

    def test_gl_method(self, capsys):
        code, out, _ = run(["differint", "--kernel", "exp", "--b", "1", "--order", "0.5", "--grid", "0.5:1:2",
                            "--method", "gl", "--h", "1e-4"], capsys)
        assert code == 0
        from fracdiff.kernels import differint_exp
        for r in rows(out):
            exact = differint_exp(0.5, 1, float(r["x"]))
            assert abs(complex(float(r["re"]), float(r["im"])) - exact) < 1e-3

    def test_constants(self, capsys):
        code, out, _ = run(["differint", "--order", "-2", "--grid", "1:2:2", "--consts", "1,0.5"], capsys)
        assert code == 0
        assert float(rows(out)[-1]["re"]) == pytest.approx(4.0)

    def test_fixed_formatting(self, capsys):
        _, out, _ = run(["differint", "--order", "0.5", "--grid", "1:2:2"], capsys)
        line = out.splitlines()[1]
        assert line.split(",")[0] == "1.0000000000000000e+00"

    def test_json(self, capsys):
        code, out, _ = run(["differint", "--order", "0.5", "--grid", "1:2:3", "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert len(payload) == 3 and payload[0]["method"] == "closed" and payload[0]["error_bound"] is None

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "t.csv"
        code, out, _ = run(["differint", "--order", "0.5", "--grid", "1:2:3", "--out", str(target)], capsys)
        assert code == 0 and out == ""
        assert len(rows(target.read_text())) == 3

    def test_byte_identical_reruns(self, tmp_path, capsys):
        args = ["differint", "--kernel", "exp", "--b", "2", "--order", "0.3", "--grid", "0.2:4:15",
                "--method", "bromwich"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run([*args, "--out", str(a)], capsys)
        run([*args, "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["differint", "--kernel", "delta", "--order", "0.5", "--grid", "1:2:3", "--method", "gl"],
        ["differint", "--order", "0.5", "--grid", "2:1:3"],
        ["differint", "--order", "0.5", "--grid", "1:2:1"],
        ["differint", "--order", "0.5", "--grid", "1:2"],
        ["differint", "--kernel", "exp", "--b", "0", "--order", "0.5", "--grid", "1:2:3"],
        ["differint", "--order", "0.5", "--grid", "1:2:3", "--consts", "1"],
        ["differint", "--order", "0.5", "--grid", "1:2:3", "--method", "bromwich", "--a", "-1"],
        ["cable", "--x-grid", "0.01:1:3", "--h", "1e-3"],
        ["cable", "--R", "-1"],
        ["specfun", "--func", "power_plus", "--grid", "1:2:3", "--imag", "1"],
    ])
    def test_usage_errors(self, argv, capsys):
        code, _, err = run(argv, capsys)
        assert code == 2
        assert "error" in err

    @pytest.mark.parametrize("argv", [
        ["differint", "--kernel", "wave", "--order", "0.5", "--grid", "1:2:3"],
        ["differint", "--method", "magic", "--order", "0.5", "--grid", "1:2:3"],
        ["differint", "--grid", "1:2:3"],
    ])
    def test_argparse_rejections_are_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(argv)
        assert info.value.code == 2

    def test_numerical_failure_reports_row(self, capsys):
        code, out, _ = run(["differint", "--order", "1", "--grid", "0.5:1:3"], capsys)
        assert code == 3
        last = rows(out)[-1]
        assert last["re"] == "nan" and "DistributionalResult" in last["note"]

    def test_order_above_bromwich_cap(self, capsys):
        code, out, _ = run(["differint", "--order", "1.5", "--grid", "0.5:1:3", "--method", "bromwich"], capsys)
        assert code == 3
        assert "DomainError" in rows(out)[-1]["note"]

    def test_numerical_failure_json_has_null(self, capsys):
        code, out, _ = run(["differint", "--order", "1", "--grid", "0.5:1:3", "--format", "json"], capsys)
        assert code == 3
        assert json.loads(out)[-1]["re"] is None


class TestSpecfun:
    def test_incomplete_gamma(self, capsys):
        code, out, _ = run(["specfun", "--func", "incgamma", "--a", "-0.5", "--grid", "1:2:2"], capsys)
        assert code == 0
        assert float(rows(out)[0]["re"]) == pytest.approx(0.17814771178156069, rel=1e-12)

    def test_angle(self, capsys):
        code, out, _ = run(["specfun", "--func", "kummer", "--a", "1", "--b", "1", "--grid", "1:2:2",
                            "--angle", str(math.pi / 2)], capsys)
        assert code == 0
        r = rows(out)[0]
        assert complex(float(r["re"]), float(r["im"])) == pytest.approx(complex(math.cos(1), math.sin(1)))

    def test_pole(self, capsys):
        code, out, _ = run(["specfun", "--func", "gamma", "--grid=-1:0:2"], capsys)
        assert code == 3
        assert "PoleError" in rows(out)[-1]["note"]


class TestCable:
    def test_defaults(self, capsys):
        code, out, _ = run(["cable"], capsys)
        assert code == 0
        table = rows(out)
        assert len(table) == 400
        assert list(table[0]) == ["x", "t", "v_re", "v_im", "i_re", "i_im", "pde_residual",
                                  "identity_residual", "habitual_residual"]
        assert max(float(r["identity_residual"]) for r in table) <= 1e-9

    def test_envelope_along_x(self, capsys):
        _, out, _ = run(["cable", "--x-grid", "0.1:5:20", "--t-grid", "1:2:2"], capsys)
        at_t = [r for r in rows(out) if float(r["t"]) == 1.0]
        for r in at_t:
            mag = math.hypot(float(r["v_re"]), float(r["v_im"]))
            assert mag == pytest.approx(math.exp(-float(r["x"]) / math.sqrt(2)), rel=1e-12)

    def test_habitual_decreases_in_t(self, capsys):
        _, out, _ = run(["cable", "--x-grid", "0.5:1:2", "--t-grid", "1:100:12"], capsys)
        at_x = [float(r["habitual_residual"]) for r in rows(out) if float(r["x"]) == 0.5]
        assert all(b < a for a, b in zip(at_x, at_x[1:]))

    def test_physical(self, capsys):
        code, out, _ = run(["cable", "--x-grid", "0.5:1:2", "--t-grid", "1:2:2", "--physical"], capsys)
        assert code == 0
        assert list(rows(out)[0]) == ["x", "t", "v", "i", "pde_residual", "identity_residual",
                                      "habitual_residual"]


class TestVerify:
    def test_single_suite(self, capsys):
        code, out, _ = run(["verify", "--suite", "kummer"], capsys)
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
        assert lines and all(l.startswith("PASS kummer/") for l in lines)

    def test_unknown_suite(self, capsys):
        code, _, _ = run(["verify", "--suite", "nope"], capsys)
        assert code == 2

    def test_tight_tolerance_fails(self, tmp_path, capsys):
        tol = tmp_path / "tol.json"
        tol.write_text(json.dumps({"kummer_identity": 1e-30}))
        code, out, _ = run(["verify", "--suite", "kummer", "--tol-file", str(tol)], capsys)
        assert code == 1
        assert "FAIL kummer/" in out

    def test_env_var_tolerance(self, tmp_path, capsys, monkeypatch):
        tol = tmp_path / "tol.json"
        tol.write_text(json.dumps({"kummer_identity": 1e-30}))
        monkeypatch.setenv("FRACDIFF_TOL_FILE", str(tol))
        code, _, _ = run(["verify", "--suite", "kummer"], capsys)
        assert code == 1

    def test_unknown_tolerance_key(self, tmp_path, capsys):
        tol = tmp_path / "tol.json"
        tol.write_text(json.dumps({"no_such_key": 1}))
        code, _, _ = run(["verify", "--suite", "kummer", "--tol-file", str(tol)], capsys)
        assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fracdiff.cli", "differint", "--order", "0.5", "--grid", "1:2:2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "x,re,im,method,error_bound,note"
