import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from rnnfsm.automata import build_trivial_unary_dpfa
from rnnfsm.cli import main
from rnnfsm.io import dump_json, load_language, rnn_from_json, load_json, two_stack_to_json, wfa_to_json
from rnnfsm.machines_zoo import drain, looper

EXAMPLE_CNF = "p cnf 4 2\n1 2 3 0\n-2 3 4 0\n"
UNSAT = "p cnf 3 8\n" + "".join(f"{a} {b} {c} 0\n" for a in (1, -1) for b in (2, -2) for c in (3, -3))


@pytest.fixture()
def files(tmp_path):
    (tmp_path / "example.cnf").write_text(EXAMPLE_CNF)
    (tmp_path / "unsat.cnf").write_text(UNSAT)
    dump_json(wfa_to_json(build_trivial_unary_dpfa()), tmp_path / "trivial.json")
    dump_json(two_stack_to_json(drain()), tmp_path / "drain.json")
    dump_json(two_stack_to_json(looper()), tmp_path / "looper.json")
    dump_json({"alphabet": ["0", "1"], "states": 5, "start": 0, "accepting": [4],
               "delta": [{"from": i, "sym": s, "to": i + 1} for i in range(4) for s in "01"]},
              tmp_path / "len4.json")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_eval_wfa(files, capsys):
    code, out = run(capsys, "eval-wfa", "--machine", files / "trivial.json", "--word", "aa")
    assert code == 0 and out["weight"] == "1/8"
    assert out["command"] == "eval-wfa" and len(out["inputs"][str(files / "trivial.json")]) == 64


def test_sat_exit_codes(files, capsys):
    code, out = run(capsys, "sat", "--cnf", files / "example.cnf", "--epsilon", "1/10")
    assert code == 1 and out["verdict"] == "sat" and len(out["witness"]) == 4
    code, out = run(capsys, "sat", "--cnf", files / "unsat.cnf")
    assert code == 0 and out["verdict"] == "unsat" and out["witness"] is None


def test_reduce_then_decide(files, capsys):
    a, r = files / "a.json", files / "r.json"
    code, out = run(capsys, "reduce-sat", "--cnf", files / "example.cnf", "--epsilon", "1/10", "--out-pfa", a,
                    "--out-rnn", r, "--print-threshold", "--s", "1")
    assert code == 0 and out["threshold"] == "24/3125"
    assert load_language(a).declared_consistent and load_language(r).declared_consistent

    code, out = run(capsys, "distance-decide", "--f", r, "--g", r, "--c", "1/100")
    assert code == 0 and out["verdict"] == "no"
    code, out = run(capsys, "distance-decide", "--f", r, "--g", a, "--c", "96/12500")
    assert code == 1 and out["witness"] == "0010" and out["difference"] == "48/3125"
    code, out = run(capsys, "distance-decide", "--f", r, "--g", a, "--c", "1/5", "--budget", "4")
    assert code == 2 and out["verdict"] == "budget_exhausted"
    code, out = run(capsys, "distance-finite", "--f", r, "--g", a, "--N", "5")
    assert code == 0 and out["distance"] == "48/3125"
    code, out = run(capsys, "eq-finite", "--f", r, "--g", a, "--m", "3")
    assert code == 0 and out["verdict"] == "equivalent"
    code, out = run(capsys, "eq-finite", "--f", r, "--g", a, "--m", "4")
    assert code == 1 and out["verdict"] == "counterexample"
    code, out = run(capsys, "consensus", "--f", r, "--c", "1/6", "--max-len", "5")
    assert code == 1 and out["witness"] == ""
    code, out = run(capsys, "consensus", "--f", r, "--c", "1/4", "--max-len", "5")
    assert code == 0 and out["verdict"] == "none"
    code, out = run(capsys, "cutpoint", "--f", a, "--c", "256/12500", "--dfa", files / "len4.json",
                    "--max-len", "5")
    assert code == 1 and out["witness"] == "0010"


def test_manifest_deterministic_across_workers(files, capsys):
    a, r = files / "a.json", files / "r.json"
    run(capsys, "reduce-sat", "--cnf", files / "example.cnf", "--out-pfa", a, "--out-rnn", r)
    outs = [run(capsys, "distance-finite", "--f", r, "--g", a, "--N", "9", "--workers", w)[1] for w in ("1", "2")]
    for o in outs:
        o.pop("wall_time_s")
        o["arguments"].pop("workers")
    assert outs[0] == outs[1]


def test_compile_and_simulate(files, capsys):
    out_path = files / "c.json"
    code, out = run(capsys, "compile", "--machine", files / "drain.json", "--input", "101", "--out", out_path)
    assert code == 0 and out["step_dilation"] == 4
    code, out = run(capsys, "simulate", "--machine", out_path, "--boundaries", "8")
    assert out["halted_at"] == 4 and out["trace"][0]["stack1"] == "101"
    assert [row["halt"] for row in out["trace"]] == ["0"] * 4 + ["1"] * 5

    code, out = run(capsys, "compile", "--machine", files / "looper.json", "--out", out_path, "--gadget")
    code, out = run(capsys, "eq-finite", "--f", files / "trivial.json", "--g", out_path, "--m", "8")
    assert code == 0 and out["verdict"] == "equivalent"
    assert rnn_from_json(load_json(out_path)).alphabet.symbols == ("a",)


def test_compile_turing_machine(files, capsys):
    tm = {"type": "tm", "states": ["scan", "done"], "tape_alphabet": ["1", "_"], "blank": "_",
          "start": "scan", "halt": ["done"],
          "delta": [{"state": "scan", "read": "1", "next": "scan", "write": "1", "move": "R"},
                    {"state": "scan", "read": "_", "next": "done", "write": "1", "move": "L"}]}
    (files / "tm.json").write_text(json.dumps(tm))
    code, out = run(capsys, "compile", "--machine", files / "tm.json", "--input", "11", "--out", files / "t.json")
    assert code == 0 and out["block_width"] == 1
    code, out = run(capsys, "simulate", "--machine", files / "t.json", "--boundaries", "60")
    assert out["verdict"] == "halted"


@pytest.mark.parametrize("argv", [
    ["eval-wfa", "--machine", "{d}/trivial.json", "--word", "ab"],
    ["distance-decide", "--f", "{d}/trivial.json", "--g", "{d}/trivial.json", "--c", "0.5"],
    ["sat", "--cnf", "{d}/missing.cnf"],
    ["simulate", "--machine", "{d}/trivial.json"],
])
def test_errors_exit_3(files, capsys, argv):
    code, out = run(capsys, *[a.format(d=files) for a in argv])
    assert code == 3 and set(out["error"]) == {"type", "message"}


def test_bad_cnf_is_error(files, capsys):
    (files / "bad.cnf").write_text("p cnf 3 1\n1 2 0\n")
    code, out = run(capsys, "sat", "--cnf", files / "bad.cnf")
    assert code == 3 and "width" in out["error"]["message"]


def test_verify_subset(capsys):
    code = main(["verify", "--suite", "paper", "--only", "1,10"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == 0 and len(lines) == 2 and all(l.startswith("[PASS]") for l in lines)


@pytest.mark.skipif(shutil.which("rnnfsm") is None, reason="console script not installed")
def test_console_script(files):
    proc = subprocess.run(["rnnfsm", "eval-wfa", "--machine", str(files / "trivial.json"), "--word", "aaa"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["weight"] == "1/16"


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "rnnfsm", "sat", "--cnf", str(files / "example.cnf")],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["verdict"] == "sat"
