"""Command-line interface: framing, exit codes, statistics output."""

import json
from pathlib import Path

import pytest

from tcnsolve.cli import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_IO,
    EXIT_UNBOUNDED,
    main,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, text, name="m.mod"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_compile_emits_ternary_form(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..3; var y in 0..3; "
                        "constraint x < y; solve satisfy;")
    code, out, _ = run(capsys, "compile", p)
    assert code == EXIT_OK
    assert " add " in out and " le " in out
    # deterministic bytes
    _, out2, _ = run(capsys, "compile", p)
    assert out == out2


def test_compile_preprocess_shrinks(capsys, tmp_path):
    p = write(tmp_path, "var a in 0..3; var b in 0..3; var y in 0..1; "
                        "var z in 0..1; constraint a = y + z; "
                        "constraint b = z + y; solve satisfy;")
    _, raw, _ = run(capsys, "compile", p)
    _, pre, _ = run(capsys, "compile", p, "--preprocess")
    assert len(pre.splitlines()) <= len(raw.splitlines())


def test_solve_framing_single_solution(capsys, tmp_path):
    p = write(tmp_path, "var x in 2..5; solve minimize x;")
    code, out, _ = run(capsys, "solve", p)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert "x = 2;" in lines
    assert "==========" in lines
    assert "status: OPTIMAL" in lines
    assert "objective: 2" in lines


def test_solve_all_solutions_separators(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..2; solve satisfy;")
    code, out, _ = run(capsys, "solve", p, "--all-solutions")
    assert code == EXIT_OK
    assert out.count("----------") == 2  # 3 solutions, 2 separators
    assert out.count("x = ") == 3
    assert "status: SAT" in out


def test_solve_unsat_has_double_rule(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..1; var y in 3..4; "
                        "constraint x = y; solve satisfy;")
    code, out, _ = run(capsys, "solve", p)
    assert code == EXIT_OK
    assert "==========" in out and "status: UNSAT" in out
    assert "= " not in out.split("==========")[0]


def test_solve_stats_and_preprocessing_only_unsat(capsys):
    path = str(CORPUS / "worked_example.mod")
    code, out, _ = run(capsys, "solve", path, "--stats")
    assert code == EXIT_OK
    assert "status: UNSAT" in out
    assert "nodes: 0" in out


def test_solve_timeout_zero_unknown(capsys, tmp_path):
    p = write(tmp_path,
              "var x in 0..50; var y in 0..50; var z in 0..50;"
              "constraint x * x + y * y = z * z; constraint x > 0;"
              "solve satisfy;")
    code, out, _ = run(capsys, "solve", p, "--timeout", "0")
    assert code == EXIT_OK and "status: UNKNOWN" in out


def test_solve_no_preprocess_agrees(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..9; var y in 0..9; "
                        "constraint x + y = 4; solve minimize x;")
    _, a, _ = run(capsys, "solve", p)
    _, b, _ = run(capsys, "solve", p, "--no-preprocess")
    assert "status: OPTIMAL" in a and "objective: 0" in a
    assert "status: OPTIMAL" in b and "objective: 0" in b


def test_parse_error_exit_code(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..3 constraint x = 1; solve satisfy;")
    code, _, err = run(capsys, "solve", p)
    assert code == EXIT_PARSE and err.strip()


def test_missing_file_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "absent.mod"))
    assert code == EXIT_IO and err.strip()


def test_unbounded_exit_code(capsys, tmp_path):
    p = write(tmp_path, "var x; var y in 0..3; constraint x >= y; "
                        "solve satisfy;")
    code, _, err = run(capsys, "solve", p, "--no-preprocess")
    assert code == EXIT_UNBOUNDED and "Unbounded" in err


def test_stats_single_model(capsys, tmp_path):
    p = write(tmp_path, "var x in 0..3; var y in 0..3; "
                        "constraint x < y; solve satisfy;")
    code, out, _ = run(capsys, "stats", p)
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["source"]["variables"] == 2
    assert rec["decomposed"]["variables"] >= 2
    assert rec["growth"]["decomposed_vars"] >= 1.0
    assert rec["preprocessed"]["constraints"] <= rec["decomposed"]["constraints"]
    hist = rec["decomposed"]["histogram"]
    assert hist["add"] >= 1 and hist["le_fixed1"] >= 1


def test_stats_batch_over_directory(capsys):
    code, out, _ = run(capsys, "stats", str(CORPUS))
    assert code == EXIT_OK
    rec = json.loads(out)
    assert rec["batch"]["models"] == len(list(CORPUS.glob("*.mod")))
    assert len(rec["records"]) == rec["batch"]["models"]
    for key in ("average", "median", "stddev", "max"):
        assert key in rec["batch"]["growth"]["decomposed_vars"]
        assert key in rec["batch"]["growth"]["decomposed_cons"]


def test_stats_empty_directory(capsys, tmp_path):
    code, _, err = run(capsys, "stats", str(tmp_path))
    assert code == EXIT_IO and err.strip()
