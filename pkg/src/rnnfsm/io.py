"""JSON formats for automata, RNNs, DFAs and machine descriptions. Rationals travel as "p/q"."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .automata import Dfa, WeightedAutomaton, validate_pfa
from .compiler.machines import TuringMachine, TwoStackMachine
from .core import Alphabet, format_rational as fmt, parse_rational as rat
from .rnn import RnnLm


def wfa_to_json(A: WeightedAutomaton) -> dict:
    return {
        "alphabet": list(A.alphabet.symbols),
        "states": A.num_states,
        "names": list(A.names),
        "initial": {str(q): fmt(v) for q, v in sorted(A.initial.items())},
        "final": {str(q): fmt(v) for q, v in sorted(A.final.items())},
        "transitions": [{"from": s, "sym": a, "to": d, "w": fmt(w)} for s, a, d, w in A.transitions],
        "consistent": A.declared_consistent,
    }


def wfa_from_json(d: dict) -> WeightedAutomaton:
    A = WeightedAutomaton(
        Alphabet(tuple(d["alphabet"])),
        int(d["states"]),
        {int(q): rat(v) for q, v in d.get("initial", {}).items()},
        {int(q): rat(v) for q, v in d.get("final", {}).items()},
        [(int(t["from"]), str(t["sym"]), int(t["to"]), rat(t["w"])) for t in d.get("transitions", [])],
        names=d.get("names"),
    )
    # without an explicit flag, a validated PFA is taken at its word
    A.declared_consistent = bool(d["consistent"]) if "consistent" in d else validate_pfa(A).is_pfa
    return A


def rnn_to_json(R: RnnLm) -> dict:
    if not isinstance(R.activation, str):
        raise ValueError("only named activations can be serialised")
    vec = lambda v: [fmt(x) for x in v]
    out = {
        "alphabet": list(R.alphabet.symbols),
        "N": R.hidden_dim,
        "h0": vec(R.h0),
        "W": [vec(r) for r in R.W],
        "emb": {s: vec(R.embeddings[s]) for s in R.alphabet.with_end},
        "O": [vec(r) for r in R.O],
        "Obias": vec(R.O_bias),
        "activation": R.activation,
        "consistent": R.declared_consistent,
    }
    if "compiled" in R.metadata:
        out["compiled"] = R.metadata["compiled"]
    return out


def rnn_from_json(d: dict) -> RnnLm:
    vec = lambda v: tuple(rat(x) for x in v)
    meta = {"compiled": d["compiled"]} if "compiled" in d else {}
    return RnnLm(
        Alphabet(tuple(d["alphabet"])),
        int(d["N"]),
        vec(d["h0"]),
        tuple(vec(r) for r in d["W"]),
        {s: vec(v) for s, v in d["emb"].items()},
        tuple(vec(r) for r in d["O"]),
        vec(d["Obias"]),
        d.get("activation", "relu"),
        declared_consistent=bool(d.get("consistent", False)),
        metadata=meta,
    )


def dfa_to_json(D: Dfa) -> dict:
    return {
        "alphabet": list(D.alphabet.symbols),
        "states": D.num_states,
        "start": D.start,
        "accepting": sorted(D.accepting),
        "delta": [{"from": q, "sym": a, "to": r} for (q, a), r in D.delta.items()],
    }


def dfa_from_json(d: dict) -> Dfa:
    return Dfa(
        Alphabet(tuple(d["alphabet"])),
        int(d["states"]),
        int(d.get("start", 0)),
        {int(q) for q in d.get("accepting", [])},
        {(int(t["from"]), str(t["sym"])): int(t["to"]) for t in d.get("delta", [])},
    )


def _halt_set(h):
    return {h} if isinstance(h, str) else set(h)


def machine_from_json(d: dict) -> Union[TuringMachine, TwoStackMachine]:
    kind = d.get("type")
    if kind == "2stack":
        rules = [
            (r["state"], r.get("top1", "*"), r.get("top2", "*"), r["next"], r.get("act1", "noop"),
             r.get("act2", "noop"))
            for r in d["delta"]
        ]
        return TwoStackMachine.from_rules(
            d["states"], d["start"], _halt_set(d["halt"]), rules,
            initial_stack1=tuple(int(b) for b in d.get("stack1", "")),
            initial_stack2=tuple(int(b) for b in d.get("stack2", "")),
        )
    if kind == "tm":
        delta = {(r["state"], r["read"]): (r["next"], r["write"], r["move"]) for r in d["delta"]}
        return TuringMachine(
            tuple(d["states"]), tuple(d["tape_alphabet"]), d.get("blank", "_"), delta, d["start"],
            frozenset(_halt_set(d["halt"])),
        )
    raise ValueError(f"machine type must be 'tm' or '2stack', got {kind!r}")


def two_stack_to_json(S: TwoStackMachine) -> dict:
    return {
        "type": "2stack",
        "states": list(S.states),
        "start": S.start,
        "halt": sorted(S.halt),
        "delta": [
            {"state": q, "top1": t1, "top2": t2, "next": r, "act1": a1, "act2": a2}
            for (q, t1, t2), (r, a1, a2) in S.delta.items()
        ],
        "stack1": "".join(map(str, S.initial_stack1)),
        "stack2": "".join(map(str, S.initial_stack2)),
    }


def load_language(path: Union[str, Path]):
    d = json.loads(Path(path).read_text())
    return rnn_from_json(d) if "W" in d else wfa_from_json(d)


def load_json(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text())


def dump_json(obj: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")
