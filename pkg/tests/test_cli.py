import csv
import io

import numpy as np
import pytest

from signomial_mm.cli import main
from signomial_mm.problemfile import load_bundled
from signomial_mm.runner import resolve_options, run_problem, summary_line, trace_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_bundled(capsys):
    code, out, _ = run(capsys, "solve", "f1")
    assert code == 0
    assert "min point (1.4310,1.4310)" in out or "min point (1.4309,1.4310)" in out
    assert "value 3.4128" in out


def test_diverging_run_is_success(capsys):
    code, out, _ = run(capsys, "solve", "f3")
    assert code == 0
    assert "diverges" in out


def test_trace_rows_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "solve", "f1", "--trace", str(a))[0] == 0
    assert run(capsys, "solve", "f1", "--trace", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.reader(io.StringIO(a.read_text())))
    assert rows[0][:4] == ["iteration", "lambda", "objective", "penalized"]
    assert rows[-1][0] == "# summary"
    data = rows[1:-1]
    assert len(data) == int(rows[-1][2].split("=")[1])
    assert float(data[-1][2]) == pytest.approx(3.4128, abs=1e-4)


def test_overrides(capsys):
    code, out, _ = run(capsys, "solve", "f1", "--max-iters", "5")
    assert code == 0 and "iterations 5" in out
    code, out, _ = run(capsys, "solve", "f6", "--accel", "2", "--inner-iters", "100")
    assert code == 0 and "(3.0000,0.5000)" in out


def test_qp_stage_table(capsys):
    code, out, _ = run(capsys, "solve", "f10", "--schedule", "0:3")
    assert code == 0
    assert out.splitlines()[0].startswith("log2(lambda)")
    assert len(out.splitlines()) == 6


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "solve", "missing-problem")[0] == 1
    bad = tmp_path / "bad.prob"
    bad.write_text("[problem]\nname = x\ndimension = q\n")
    code, _, err = run(capsys, "solve", str(bad))
    assert code == 1 and "line 3" in err
    with pytest.raises(SystemExit) as info:
        main(["solve", "f1", "--accel", "7"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["solve", "f1", "--schedule", "5:1"])
    assert info.value.code == 1


def test_diagnose(capsys):
    code, out, _ = run(capsys, "diagnose", "f3")
    assert code == 0
    assert "coercive: no" in out and "infimum attained: no" in out
    code, out, _ = run(capsys, "diagnose", "f1")
    assert "coercive: yes" in out and "strictly convex: yes" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "table2")
    assert code == 0 and out.strip().endswith("20/20 passed")


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert "toy_constrained" in out.split()


def test_runner_value_is_unpenalized():
    spec = load_bundled("f10")
    result = run_problem(spec, resolve_options(spec, schedule=(0, 17)))
    assert result.value == pytest.approx(spec.qp.objective(result.x))
    assert "f10" in summary_line(result)
    assert trace_text(result).count("\n") == result.iterations + 2
