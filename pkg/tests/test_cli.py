import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import FIXTURES
from robkit import apply_completion, apply_permutation, is_robinson_complete
from robkit.cli import main
from robkit.fileio import parse_matrix, parse_matrix_text
from robkit.matrix import Completion

GAP6 = str(FIXTURES / "gap6.txt")
CLAW4 = str(FIXTURES / "claw4.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def witness_holds(path, doc):
    A = parse_matrix(path)
    c = Completion.from_mapping(
        {(e["row"] - 1, e["col"] - 1): Fraction(e["value"]) for e in doc["witness_completion"]}
    )
    order = [x - 1 for x in doc["witness_order"]]
    return bool(is_robinson_complete(apply_permutation(apply_completion(A, c), order)))


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_robinson_passes(capsys):
    code, doc, err = run_json(capsys, "check", GAP6)
    assert code == 0 and doc["verdict"] == "PASS" and doc["violation"] is None
    assert "PASS" in err


def test_check_strong_fails_with_nested_pair(capsys):
    code, doc, err = run_json(capsys, "check", GAP6, "--mode", "strong")
    assert code == 1 and doc["verdict"] == "FAIL"
    v = doc["violation"]
    assert v["kind"] == "NestedPair"
    assert v["cells"] == [[2, 5], [3, 4]]
    assert "a[2,5]=1 > a[3,4]=0" in err


def test_check_constant(capsys, tmp_path):
    path = write(tmp_path, "c.txt", "2 2\n2 2\n")
    assert run(capsys, "check", path, "--mode", "strong")[0] == 0


def test_recognize_claw4_no(capsys):
    code, doc, _ = run_json(capsys, "recognize", CLAW4)
    assert code == 1 and doc["verdict"] == "NO"
    assert "witness_order" not in doc
    assert doc["refutation"]["reason"] == "levels"
    assert doc["refutation"]["threshold"] == "1"


def test_recognize_gap6_incomplete(capsys):
    code, doc, err = run_json(capsys, "recognize", GAP6, "--incomplete", "--exhaustive")
    assert code == 1 and doc["verdict"] == "NO" and doc["tried"] == 4
    assert "tried 4" in err


def test_recognize_needs_flag_for_missing(capsys):
    code, out, err = run(capsys, "recognize", GAP6)
    assert code == 2 and "--incomplete" in err


def test_recognize_oracle_claw4(capsys):
    code, doc, _ = run_json(capsys, "recognize", CLAW4, "--oracle")
    assert code == 1 and doc["tried"] == 24


def test_recognize_direct_gap6(capsys):
    code, doc, _ = run_json(capsys, "recognize", GAP6, "--incomplete", "--oracle")
    assert code == 1 and doc["verdict"] == "NO"


def test_gen_then_recognize(capsys, tmp_path):
    path = str(tmp_path / "inst.txt")
    assert run(capsys, "gen", "--n", "9", "--values", "3", "--free", "4", "--seed", "11", "-o", path)[0] == 0
    side = json.loads((tmp_path / "inst.txt.json").read_text())
    assert side["prng"] == "splitmix64" and side["seed"] == 11
    assert sorted(side["hidden_order"]) == list(range(1, 10))
    assert len(side["hidden_completion"]) == 4
    header = (tmp_path / "inst.txt").read_text().splitlines()[0]
    assert header.startswith("# robkit gen prng=splitmix64 seed=11")
    assert witness_holds(path, {
        "witness_order": side["hidden_order"],
        "witness_completion": side["hidden_completion"],
    })
    code, doc, _ = run_json(capsys, "recognize", path, "--incomplete", "--deterministic")
    assert code == 0 and doc["verdict"] == "YES"
    assert doc["input_digest"] == side["input_digest"]
    assert witness_holds(path, doc)


def test_gen_no_kind(capsys, tmp_path):
    path = str(tmp_path / "no.txt")
    run(capsys, "gen", "--n", "8", "--values", "3", "--free", "2", "--kind", "no", "-o", path)
    side = json.loads((tmp_path / "no.txt.json").read_text())
    assert len(side["claw"]) == 4
    code, doc, _ = run_json(capsys, "recognize", path, "--incomplete", "--exhaustive")
    assert code == 1 and doc["tried"] == 9


def test_values_file(capsys, tmp_path):
    path = write(tmp_path, "m.txt", "2 *\n* 2\n")
    vals = write(tmp_path, "v.txt", "# candidates\n0.5 3\n")
    code, doc, _ = run_json(capsys, "recognize", path, "--incomplete", "--values-file", vals,
                            "--deterministic")
    assert code == 0
    assert doc["witness_completion"] == [{"row": 1, "col": 2, "value": "0.5"}]
    code, _, err = run(capsys, "recognize", path, "--values-file", vals)
    assert code == 2


def test_complete_forced_case(capsys, tmp_path):
    path = write(tmp_path, "f.txt", "1 1 *\n1 1 1\n* 1 1\n")
    code, out, _ = run(capsys, "complete", path)
    assert code == 0
    assert parse_matrix_text(out).cells == ((1, 1, 1),) * 3


def test_complete_rejects_non_strong(capsys):
    code, out, err = run(capsys, "complete", GAP6)
    assert code == 2
    assert json.loads(out)["error"] == "NotStrongRobinson"
    assert "a[2,5]" in err


def test_oracle_command(capsys):
    code, doc, err = run_json(capsys, "oracle", GAP6)
    assert code == 1 and doc["tried"] == 720 and "720" in err
    code, doc, _ = run_json(capsys, "oracle", CLAW4, "--prune")
    assert code == 1 and doc["tried"] == 12


def test_error_messages(capsys, tmp_path):
    bad = write(tmp_path, "bad.txt", "1 x\nx 1\n")
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "line 1, column 3" in err
    asym = write(tmp_path, "asym.txt", "1 2\n3 1\n")
    code, _, err = run(capsys, "check", asym)
    assert code == 2 and "(1, 2)" in err
    code, _, err = run(capsys, "check", str(tmp_path / "missing.txt"))
    assert code == 2


def test_bench_command(capsys):
    code, out, err = run(capsys, "bench", "--n", "10", "--values", "2", "--free", "1-3",
                         "--seeds", "1", "--exhaustive")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "free,mean_time_ms,completions_tested"
    assert [ln.split(",")[2] for ln in lines[1:]] == ["2", "4", "8"]
    assert "ratio" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "robkit", "check", GAP6], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "PASS"
