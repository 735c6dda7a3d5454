import json
from pathlib import Path

import pytest

from lfpwhile.cli import main

LENGTH_IMP = str(Path(__file__).resolve().parents[1] / "demos" / "length.imp")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_run_skip(capsys):
    code, out = run(capsys, "run", "--program", "skip", "--reg1", "0")
    assert code == 0 and out.out.startswith("Converged")


def test_run_length_file(capsys):
    code, out = run(capsys, "--output", "json", "run", "--file", LENGTH_IMP, "--chain", "5,7,9", "--budget", "100")
    assert code == 0
    report = json.loads(out.out)
    assert report["state"]["reg2"] == 3 and report["state"]["reg1"] == 0


def test_run_exhausted(capsys):
    code, out = run(capsys, "run", "--program", "while reg1 != 0 { skip }", "--reg1", "1", "--budget", "50")
    assert code == 2 and "Exhausted" in out.out


def test_run_parse_error(capsys):
    code, out = run(capsys, "run", "--program", "reg1 := mem[")
    assert code == 1 and "column 13" in out.err


@pytest.mark.parametrize("argv", [
    ["run"],
    ["run", "--program", "skip", "--mem", "5-7"],
    ["run", "--program", "skip", "--chain", "4,4"],
    ["run", "--program", "skip", "--budget", "0"],
    ["run", "--file", "/nonexistent.imp"],
    ["check", "no-such-suite"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("LFPWHILE_BUDGET", "7")
    code, out = run(capsys, "run", "--program", "while reg1 != 0 { skip }", "--reg1", "1")
    assert code == 2 and "budget=7" in out.out


def scan_rows(capsys, *argv):
    code, out = run(capsys, "--output", "json", "fuel-scan", *argv)
    assert code == 0
    return json.loads(out.out)["rows"]


def test_fuel_scan_length(capsys):
    rows = scan_rows(capsys, "--file", LENGTH_IMP, "--chain", "5,7", "--max-fuel", "5")
    assert [r["result"] for r in rows[:4]] == ["bottom", "bottom", "bottom", "defined"]
    code, out = run(capsys, "--output", "json", "run", "--file", LENGTH_IMP, "--chain", "5,7")
    report = json.loads(out.out)
    first = next(r for r in rows if r["result"] == "defined")
    assert first["fuel"] == report["fuel"] and first["state"] == report["state"]


def test_fuel_scan_cond_false_and_self_loop(capsys):
    rows = scan_rows(capsys, "--program", "while reg1 != 0 { skip }", "--max-fuel", "3")
    assert [r["result"] for r in rows] == ["bottom", "defined", "defined", "defined"]
    rows = scan_rows(capsys, "--program", "while reg1 != 0 { reg1 := mem[reg1] }",
                     "--mem", "4:4", "--reg1", "4", "--max-fuel", "30")
    assert all(r["result"] == "bottom" for r in rows)


def test_check_pass(capsys):
    code, out = run(capsys, "--output", "json", "check", "length-terminates")
    assert code == 0
    report = json.loads(out.out)
    assert report["status"] == "pass"
    for r in report["results"]:
        assert {"suite", "property", "status", "states_checked"} <= set(r)


def test_check_mutate_reports_counterexample(capsys):
    code, out = run(capsys, "--output", "json", "check", "hoare-length", "--mutate")
    assert code == 3
    failed = [r for r in json.loads(out.out)["results"] if r["status"] == "fail"]
    assert failed and all("witness" in r for r in failed)


def test_check_output_is_deterministic(capsys):
    _, a = run(capsys, "--output", "json", "check", "monad-laws", "--seed", "3")
    _, b = run(capsys, "--output", "json", "check", "monad-laws", "--seed", "3")
    assert a.out == b.out


@pytest.mark.parametrize("suite", ["order-lab", "fixpoint-laws", "monad-laws", "length-terminates"])
def test_every_quick_suite_fails_under_mutation(capsys, suite):
    assert main(["check", suite, "--mutate"]) == 3
    assert main(["check", suite]) == 0
