import json
from pathlib import Path

import pytest

from ratsub.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
GROUP = str(DATA / "z_x_z2.json")
WORKED = str(DATA / "a_xstar.json")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def instance(element, automaton=WORKED):
    return ["--group", GROUP, "--automaton", automaton, "--element", element]


def test_decide_exit_codes(capsys):
    code, out = run(capsys, "decide", *instance("x a1"))
    assert code == 0 and "witness: a1 x" in out.out
    code, out = run(capsys, "decide", *instance("a1^-1"))
    assert code == 1 and "not a member" in out.out


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": [1], "initial": 1, "finals": [1], "transitions": [[1, "zz", 1]]}')
    assert run(capsys, "decide", *instance("x", str(bad)))[0] == 2
    assert run(capsys, "decide", *instance("b9"))[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "decide", *instance("x", str(broken)))[0] == 2
    assert run(capsys, "decide", *instance("x", str(tmp_path / "missing.json")))[0] == 2
    assert run(capsys, "verify", *instance("x"), "--max-factors", "-1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_reduce_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, printed = run(capsys, "reduce", *instance("x a1"), "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["added_final_state"] is None
    assert [d["element"] for d in report["delta"]] == ["t a1 t^-1 a1 t t a1^-1 t^-1 t^-1", "x"]
    assert report["g"] == "x t a1 t^-1 a1 t t a1^-1 t^-1 t^-1"

    code, printed = run(capsys, "reduce", *instance("x", str(DATA / "two_finals.json")))
    assert code == 0 and "added final state 4" in printed.out


def test_verify_schema(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, printed = run(capsys, "verify", *instance("x a1"), "--out", str(out))
    assert code == 0
    rec = json.loads(out.read_text())
    assert rec["status"] == "consistent" and rec["aggregate"] == "member"
    assert set(rec) >= {"h", "answer_decider", "witness", "per_P", "aggregate",
                        "constructive", "answer_enumeration", "status", "problems"}
    row = rec["per_P"][0]
    assert set(row) == {"P", "delta_size", "oracle", "certificate", "bound",
                        "max_syllables", "explored"}

    code, printed = run(capsys, "verify", *instance("a1^-1"))
    assert code == 0 and "consistent (no-within-bound)" in printed.out


def test_verify_zero_bound_is_inconclusive(capsys):
    code, printed = run(capsys, "verify", *instance("x a1"), "--max-factors", "0")
    assert code == 0 and "inconclusive" in printed.out


def test_injected_fault_is_flagged(capsys):
    code, printed = run(capsys, "verify", *instance("a1^-1"), "--inject-fault")
    assert code == 3 and "discrepancy" in printed.out


def test_corpus_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "corpus", "--seed", "7", "--count", "20", "--out", str(a))[0] == 0
    assert run(capsys, "corpus", "--seed", "7", "--count", "20", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["instances"] == 20 and report["discrepancy"] == 0
    assert report["members"] + report["non_members"] == 20


@pytest.mark.parametrize("flag", ["--max-factors", "--max-syllables", "--max-len"])
def test_corpus_accepts_zero_bounds(capsys, flag):
    code, _ = run(capsys, "corpus", "--seed", "1", "--count", "6", flag, "0")
    assert code == 0
