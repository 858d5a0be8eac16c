"""Command-line surface: formats, determinism, exit codes."""

import csv
import io
import json

import pytest

from kudla_green.cli import main

GREEN_ARGS = ["green", "--z1", "0.1+1.1i", "--z2", "0.2+0.15i",
              "--z3=-0.3+1.3i", "--m", "1", "--gamma", "0",
              "--v", "1", "--radius", "6"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_coeff_table_values(capsys):
    code, out = run_cli(capsys, "coeff", "--gamma", "0", "--m-from", "1",
                        "--m-to", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["gamma", "m", "D0", "f", "H", "C", "deg"]
    row1 = lines[1].split("\t")
    assert row1[:5] == ["0", "1", "1", "2", "-7/12"]
    assert float(row1[5]) == pytest.approx(-140.0)
    assert float(row1[6]) == pytest.approx(7.0 / 144.0)
    assert len(lines) == 4


def test_coeff_empty_range_header_only(capsys):
    code, out = run_cli(capsys, "coeff", "--gamma", "0", "--m-from", "5",
                        "--m-to", "4")
    assert code == 0
    assert out.strip().splitlines() == ["gamma\tm\tD0\tf\tH\tC\tdeg"]


def test_coeff_invalid_range_exit_2(capsys):
    code, out = run_cli(capsys, "coeff", "--gamma", "0", "--m-from", "0",
                        "--m-to", "3")
    assert code == 2
    assert "error" in out


def test_coeff_gamma1_quarter_indices(capsys):
    code, out = run_cli(capsys, "coeff", "--gamma", "1", "--m-from", "1",
                        "--m-to", "13")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    ms = [r.split("\t")[1] for r in rows]
    assert ms == ["1/4", "5/4", "9/4", "13/4"]
    # the 4m = 5 row carries H(2,5) = -2/5
    assert rows[1].split("\t")[4] == "-2/5"


def test_coeff_deterministic(capsys):
    _, out1 = run_cli(capsys, "coeff", "--gamma", "0", "--m-from", "1",
                      "--m-to", "6")
    _, out2 = run_cli(capsys, "coeff", "--gamma", "0", "--m-from", "1",
                      "--m-to", "6")
    assert out1 == out2


def test_coeff_csv_json_payloads_match(capsys):
    _, csv_out = run_cli(capsys, "--format", "csv", "coeff", "--gamma", "0",
                         "--m-from", "1", "--m-to", "4")
    _, json_out = run_cli(capsys, "--format", "json", "coeff", "--gamma", "0",
                          "--m-from", "1", "--m-to", "4")
    csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
    json_rows = json.loads(json_out)["rows"]
    assert len(csv_rows) == len(json_rows) == 4
    for cr, jr in zip(csv_rows, json_rows):
        assert cr["H"] == jr["H"]
        assert float(cr["C"]) == jr["C"]
        assert float(cr["deg"]) == jr["deg"]


def test_green_generic_point(capsys):
    code, out = run_cli(capsys, "--format", "json", *GREEN_ARGS)
    assert code == 0
    payload = json.loads(out)
    row = payload["rows"][0]
    assert row["terms_used"] > 0
    assert row["value"] > 0
    assert row["tail_bound"] >= 0


def test_green_domain_error_exit_3(capsys):
    code, out = run_cli(capsys, "green", "--z1", "1i", "--z2", "5i",
                        "--z3", "1i", "--m", "1", "--gamma", "0", "--v", "1")
    assert code == 3


def test_green_singular_point_exit_4(capsys):
    code, out = run_cli(capsys, "green", "--z1", "1i", "--z2", "0i",
                        "--z3", "1i", "--m", "1", "--gamma", "0", "--v", "1")
    assert code == 4
    assert "divisor" in out


def test_green_quarter_index(capsys):
    code, out = run_cli(capsys, "--format", "json", "green",
                        "--z1", "0.41+1.13i", "--z2", "0.27+0.21i",
                        "--z3", "0.13+0.93i", "--m", "5/4", "--gamma", "1",
                        "--v", "2", "--radius", "5")
    assert code == 0
    assert json.loads(out)["rows"][0]["terms_used"] > 0


def test_green_class_mismatch_exit_2(capsys):
    code, _ = run_cli(capsys, "green", "--z1", "0.4+1.1i", "--z2", "0.3+0.2i",
                      "--z3", "0.1+0.9i", "--m", "1/4", "--gamma", "0",
                      "--v", "1")
    assert code == 2


def test_verify_default_passes(capsys):
    code, out = run_cli(capsys, "verify", "--tol", "1e-6")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_verify_tight_tolerance_fails(capsys):
    code, out = run_cli(capsys, "verify", "--tol", "1e-15")
    assert code == 1
    assert "FAIL" in out


def test_verify_only_exact_check(capsys):
    code, out = run_cli(capsys, "--format", "json", "verify", "--only",
                        "divisor-sum-exact", "--tol", "1e-6")
    assert code == 0
    checks = json.loads(out)["checks"]
    assert len(checks) == 1
    assert checks[0]["diff"] == 0.0


def test_verify_unknown_check_exit_2(capsys):
    code, out = run_cli(capsys, "verify", "--only", "no-such-check")
    assert code == 2


def test_output_file_writing(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["--output", str(target), "--format", "json", "coeff",
                 "--gamma", "0", "--m-from", "1", "--m-to", "2"])
    assert code == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(target.read_text())
    assert payload["command"] == "coeff"
    assert len(payload["rows"]) == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["green", "--z1", "not-a-number", "--z2", "1i", "--z3", "1i",
              "--m", "1", "--gamma", "0", "--v", "1"])
    assert exc.value.code == 2
