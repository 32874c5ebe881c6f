import json

import pytest

from ternlat.cli import main, parse_element
from ternlat.numberfield import sqrt2_context


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse_element():
    ctx = sqrt2_context()
    assert parse_element(ctx, "6") == ctx.from_rational(6)
    assert parse_element(ctx, "3*(2+sqrt2)") == 3 * (2 + ctx.sqrt2)
    assert parse_element(ctx, "5+3*sqrt2") == 5 + 3 * ctx.sqrt2
    assert parse_element(ctx, "-sqrt2") == -ctx.sqrt2
    assert parse_element(ctx, "2-sqrt2") == 2 - ctx.sqrt2


def test_small_elements(capsys, fields_dir):
    code, out = run(capsys, "small-elements",
                    "--field", str(fields_dir / "qsqrt2.json"),
                    "--bound", "6")
    assert code == 0
    assert "# 11 elements" in out


def test_small_elements_report(capsys, fields_dir, tmp_path):
    out_path = tmp_path / "r.json"
    code, out = run(capsys, "small-elements",
                    "--field", str(fields_dir / "qsqrt2.json"),
                    "--bound", "3*(2+sqrt2)", "--out", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert len(data["verdicts"]) == 5


def test_case_analysis_cli(capsys):
    code, out = run(capsys, "case-analysis", "--mode", "L1")
    assert code == 0
    assert "2+sqrt2" in out and "determinant formula verified: True" in out
    code, out = run(capsys, "case-analysis", "--mode", "two")
    assert code == 0
    assert "gamma^2*t = beta^2" in out and "gamma = t*beta^2" in out


def test_classify_ternary_cli(capsys, fields_dir):
    code, out = run(capsys, "classify-ternary",
                    "--field", str(fields_dir / "qsqrt2.json"))
    assert code == 0
    assert "L1" in out and "infeasible" in out


def test_overlattice_cli(capsys, fields_dir):
    code, out = run(capsys, "overlattice-test",
                    "--field", str(fields_dir / "qsqrt2.json"))
    assert code == 0
    assert "no proper classical free overlattice" in out


def test_cyclotomic_cli(capsys):
    code, out = run(capsys, "cyclotomic", "--k", "8")
    assert code == 0
    assert "[-2, 0, 1]" in out


def test_subfield_cli(capsys, fields_dir):
    code, out = run(capsys, "subfield", "--k", "5",
                    "--field", str(fields_dir / "qsqrt2.json"))
    assert code == 0
    assert "not a subfield" in out


def test_dual_cli(capsys, fields_dir):
    code, out = run(capsys, "dual", "--field", str(fields_dir / "q.json"),
                    "--diag", "1;1;1", "--gamma", "7")
    assert code == 0
    assert "NOT represented" in out


def test_sum_of_squares_cli(capsys, fields_dir):
    code, out = run(capsys, "sum-of-squares",
                    "--field", str(fields_dir / "q.json"),
                    "--gamma", "7", "--n", "3")
    assert code == 0
    assert "NOT a sum of 3 squares" in out


def test_indecomposables_cli(capsys, fields_dir):
    code, out = run(capsys, "indecomposables",
                    "--field", str(fields_dir / "qsqrt2.json"),
                    "--trace-bound", "10")
    assert code == 0
    assert "lambda-square" in out


def test_scan_cli(capsys, fields_dir, tmp_path):
    out_path = tmp_path / "scan.json"
    code, out = run(capsys, "scan",
                    "--fields", str(fields_dir / "quartic_sqrt2.jsonl"),
                    "--max-disc", "3000", "--command", "small",
                    "--out", str(out_path))
    assert code == 0
    assert "exceptional for 3*lambda" in out
    data = json.loads(out_path.read_text())
    assert data["metadata"]["command"] == "small-condition"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["scan"])  # missing required --fields
    assert exc.value.code == 2


def test_bad_expression_is_item_error(capsys, fields_dir):
    code = main(["small-elements", "--field", str(fields_dir / "q.json"),
                 "--bound", "sqrt2"])
    assert code == 1
