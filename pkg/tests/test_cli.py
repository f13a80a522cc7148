"""Command-line interface: exit codes, JSON output, determinism."""

from fractions import Fraction
import json

import pytest

from qsing.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_analyze_loop_cubic(capsys):
    code, payload, _ = run_json(capsys, "analyze",
                                "--poly", "x^3+x*y^3", "--vars", "x,y")
    assert code == 0
    assert payload["weights"] == ["1/3", "2/9"]
    assert payload["c_hat"] == "8/9"
    assert payload["mu"] == 7
    assert payload["group_order"] == 9


def test_analyze_bad_polynomial_is_domain_error(capsys):
    code, payload, _ = run_json(capsys, "analyze",
                                "--poly", "x^2*y", "--vars", "x,y")
    assert code == 1
    assert "error" in payload
    assert payload["error"]["type"]
    assert payload["error"]["message"]


def test_missing_command_is_usage_error(capsys):
    code, out, err = run(capsys)
    assert code == 2
    assert "usage error" in err


def test_unknown_flag_is_usage_error(capsys):
    code, out, err = run(capsys, "analyze", "--nope")
    assert code == 2


def test_group_listing(capsys):
    code, payload, _ = run_json(capsys, "group", "--case", "E7")
    assert code == 0
    assert payload["order"] == 9


def test_statespace_dimension_and_degrees(capsys):
    code, payload, _ = run_json(capsys, "statespace", "--case", "E7")
    assert code == 0
    assert payload["dimension"] == 7
    degs = sorted(Fraction(b["degree"]) for b in payload["basis"])
    assert degs == sorted([Fraction(0), Fraction(4, 9), Fraction(2, 3),
                           Fraction(8, 9), Fraction(10, 9), Fraction(4, 3),
                           Fraction(16, 9)])


def test_correlator_table_values(capsys):
    code, payload, _ = run_json(capsys, "correlators", "--case", "E7")
    assert code == 0
    values = {Fraction(row["value"]) for row in payload["correlators"]}
    assert Fraction(1, 9) in values
    assert Fraction(-1, 9) in values
    assert Fraction(1, 3) in values


def test_mirror_check_exceptional(capsys):
    code, payload, _ = run_json(capsys, "mirror-check", "--case", "E6")
    assert code == 0
    assert payload["dimension"] == 6
    assert payload["pairing_ratio"] == "12"
    assert payload["lambda"] == "-1"
    assert payload["verified"] is True


def test_mirror_check_chain_reports_mismatch(capsys):
    code, payload, _ = run_json(capsys, "mirror-check", "--case", "DT:4")
    assert code == 0
    assert payload["lambda"] == "-1"
    assert payload["expected_lambda"] == "1"
    assert payload["verified"] is False


def test_rationals_round_trip(capsys):
    _, payload, _ = run_json(capsys, "statespace", "--case", "Dodd:5")
    for b in payload["basis"]:
        f = Fraction(b["degree"])
        assert str(f) == b["degree"]


def test_reruns_are_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        code, out, _ = run(capsys, "potential", "--case", "A:4", "--json")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_truncation_order_env(capsys, monkeypatch):
    monkeypatch.setenv("QSING_ORDER", "2")
    _, low, _ = run(capsys, "bmodel", "--case", "A:3", "--json")
    monkeypatch.setenv("QSING_ORDER", "3")
    _, high, _ = run(capsys, "bmodel", "--case", "A:3", "--json")
    assert low != high
    _, flagged, _ = run(capsys, "bmodel", "--case", "A:3", "--order", "2",
                        "--json")
    monkeypatch.delenv("QSING_ORDER")
    assert json.loads(flagged)["truncation_order"] == 2


def test_text_output_mode(capsys):
    code, out, err = run(capsys, "analyze", "--poly", "x^3+x*y^3",
                         "--vars", "x,y")
    assert code == 0
    assert "1/3" in out
