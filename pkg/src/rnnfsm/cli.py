"""``rnnfsm`` command line: JSON report on stdout, logs on stderr.

Exit codes: 0 = no / equivalent / unsat / plain success, 1 = yes / counterexample /
sat / found, 2 = budget exhausted, 3 = error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .automata import Dfa, WeightedAutomaton
from .compiler import CompiledRnn, TuringMachine, attach_output_gadget, compile_two_stack, simulate, tm_to_two_stack
from .core import Alphabet, format_rational, parse_rational
from .decision import (
    Counterexample, bounded_consensus_search, bounded_cutpoint_intersection, decide_tchebychev_gt, eq_finite,
    finite_support_distance, reduction_pair,
)
from .interval import Interval
from .io import dfa_from_json, dump_json, load_json, load_language, machine_from_json, rnn_from_json, rnn_to_json
from .io import wfa_to_json
from .reduction import ReductionParams, parse_dimacs, reduction_threshold

log = logging.getLogger("rnnfsm")

EXIT_NO, EXIT_YES, EXIT_BUDGET, EXIT_ERROR = 0, 1, 2, 3


def value_json(v):
    if isinstance(v, Interval):
        return {"lower": format_rational(v.lower), "upper": format_rational(v.upper),
                "precision_bits": v.precision_bits}
    if isinstance(v, (Fraction, int)):
        return format_rational(Fraction(v))
    return v


def word_json(lang, w):
    return None if w is None else lang.alphabet.show(w)


class Run:
    def __init__(self, args):
        self.args = args
        self.inputs = {}
        self.t0 = time.perf_counter()

    def read(self, path: str) -> Path:
        p = Path(path)
        self.inputs[str(p)] = hashlib.sha256(p.read_bytes()).hexdigest()
        return p

    def language(self, path):
        lang = load_language(self.read(path))
        if getattr(self.args, "assume_consistent", False):
            if isinstance(lang, WeightedAutomaton):
                lang.declared_consistent = True
            else:
                object.__setattr__(lang, "declared_consistent", True)
        return lang

    def manifest(self, verdict=None, **fields):
        args = {k: v for k, v in vars(self.args).items() if k not in ("func",)}
        return {
            "command": self.args.command,
            "arguments": args,
            "inputs": self.inputs,
            "verdict": verdict,
            **fields,
            "wall_time_s": round(time.perf_counter() - self.t0, 6),
        }


def cmd_eval_wfa(run):
    A = run.language(run.args.machine)
    if not isinstance(A, WeightedAutomaton):
        raise ValueError("eval-wfa expects an automaton file")
    w = A.alphabet.word(run.args.word)
    return EXIT_NO, run.manifest(weight=value_json(A.weight(w)), word=A.alphabet.show(w))


def cmd_eval_rnn(run):
    R = run.language(run.args.machine)
    if isinstance(R, WeightedAutomaton):
        raise ValueError("eval-rnn expects an RNN file")
    w = R.alphabet.word(run.args.word)
    return EXIT_NO, run.manifest(weight=value_json(R.weight(w, run.args.precision)), word=R.alphabet.show(w))


def cmd_compile(run):
    M = machine_from_json(load_json(run.read(run.args.machine)))
    extra = {}
    if isinstance(M, TuringMachine):
        S = tm_to_two_stack(M, list(run.args.input or ""))
        C = compile_two_stack(S)
        extra = {"block_width": S.meta["block_width"], "codes": S.meta["codes"]}
    else:
        bits = None if run.args.input is None else [int(b) for b in run.args.input]
        C = compile_two_stack(M, bits)
        S = M
    R = attach_output_gadget(C) if run.args.gadget else C.rnn
    dump_json(rnn_to_json(R), run.args.out)
    return EXIT_NO, run.manifest(
        out=run.args.out, hidden_dim=R.hidden_dim, control_states=len(S.states),
        **R.metadata["compiled"], **extra,
    )


def cmd_simulate(run):
    R = rnn_from_json(load_json(run.read(run.args.machine)))
    C = CompiledRnn.from_rnn(R)
    trace = simulate(C, run.args.boundaries)
    halted_at = next((e.boundary for e in trace if e.halt_value == 1), None)
    rows = [
        {
            "boundary": e.boundary,
            "halt": value_json(e.halt_value),
            "stack_values": [value_json(x) for x in e.stack_values],
            "state": e.config.state if e.config else None,
            "stack1": "".join(map(str, e.config.stack1)) if e.config else None,
            "stack2": "".join(map(str, e.config.stack2)) if e.config else None,
        }
        for e in trace
    ]
    return EXIT_NO, run.manifest(verdict="halted" if halted_at is not None else "running",
                                 halted_at=halted_at, step_dilation=C.step_dilation, trace=rows)


def _params(args):
    return ReductionParams(parse_rational(args.epsilon), parse_rational(args.s) if args.s else None)


def cmd_reduce_sat(run):
    F = parse_dimacs(run.read(run.args.cnf).read_text())
    p = _params(run.args)
    R, A = reduction_pair(F, p)
    if run.args.out_pfa:
        dump_json(wfa_to_json(A), run.args.out_pfa)
    if run.args.out_rnn:
        dump_json(rnn_to_json(R), run.args.out_rnn)
    fields = dict(num_vars=F.num_vars, num_clauses=F.k, pfa_states=A.num_states)
    if run.args.print_threshold:
        fields["threshold"] = format_rational(reduction_threshold(F, p))
    return EXIT_NO, run.manifest(**fields)


def cmd_distance_decide(run):
    f, g = run.language(run.args.f), run.language(run.args.g)
    v = decide_tchebychev_gt(f, g, parse_rational(run.args.c), run.args.budget, run.args.workers)
    code = {"yes": EXIT_YES, "no": EXIT_NO, "budget_exhausted": EXIT_BUDGET}[v.outcome]
    return code, run.manifest(
        v.outcome, witness=word_json(f, v.witness), difference=value_json(v.difference),
        masses={"f": value_json(v.mass_f), "g": value_json(v.mass_g)}, words_examined=v.words_examined,
    )


def cmd_distance_finite(run):
    f, g = run.language(run.args.f), run.language(run.args.g)
    rep = finite_support_distance(f, g, run.args.N, run.args.workers)
    verdict = None
    code = EXIT_NO
    if run.args.c is not None:
        exceeded = rep.distance > parse_rational(run.args.c)
        verdict, code = ("yes", EXIT_YES) if exceeded else ("no", EXIT_NO)
    return code, run.manifest(verdict, distance=value_json(rep.distance), witness=word_json(f, rep.argmax),
                              support_bound=rep.support_bound)


def cmd_eq_finite(run):
    f, g = run.language(run.args.f), run.language(run.args.g)
    res = eq_finite(f, g, run.args.m, run.args.workers)
    if isinstance(res, Counterexample):
        return EXIT_YES, run.manifest("counterexample", witness=word_json(f, res.word),
                                      weights={"f": value_json(res.f_weight), "g": value_json(res.g_weight)})
    return EXIT_NO, run.manifest("equivalent", support_bound=res.support_bound)


def cmd_consensus(run):
    f = run.language(run.args.f)
    w = bounded_consensus_search(f, parse_rational(run.args.c), run.args.max_len, run.args.workers)
    if w is None:
        return EXIT_NO, run.manifest("none")
    return EXIT_YES, run.manifest("found", witness=word_json(f, w), weight=value_json(f.weight(w)))


def cmd_cutpoint(run):
    f = run.language(run.args.f)
    D = dfa_from_json(load_json(run.read(run.args.dfa)))
    w = bounded_cutpoint_intersection(f, parse_rational(run.args.c), D, run.args.max_len, run.args.workers)
    if w is None:
        return EXIT_NO, run.manifest("none")
    return EXIT_YES, run.manifest("found", witness=word_json(f, w), weight=value_json(f.weight(w)))


def cmd_sat(run):
    F = parse_dimacs(run.read(run.args.cnf).read_text())
    p = _params(run.args)
    R, A = reduction_pair(F, p)
    rep = finite_support_distance(R, A, F.num_vars + 1, run.args.workers)
    c = reduction_threshold(F, p)
    sat = rep.distance > c
    return (EXIT_YES if sat else EXIT_NO), run.manifest(
        "sat" if sat else "unsat", distance=value_json(rep.distance), threshold=value_json(c),
        witness=word_json(R, rep.argmax) if sat else None,
    )


def cmd_verify(run):
    only = {int(x) for x in run.args.only.split(",")} if run.args.only else None
    results = []
    for crit in acceptance.CRITERIA:
        if only and crit.number not in only:
            continue
        r = acceptance.run_criterion(crit)
        results.append(r)
        line = acceptance.format_result(r)
        print(line, file=sys.stderr if run.args.json else sys.stdout, flush=True)
    ok = all(r.passed for r in results)
    manifest = run.manifest("pass" if ok else "fail", criteria=[
        {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail,
         "seconds": round(r.seconds, 3), "limit_seconds": r.limit_seconds} for r in results
    ])
    return (EXIT_NO if ok else EXIT_YES), (manifest if run.args.json else None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rnnfsm", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    def pair(p):
        p.add_argument("--f", required=True)
        p.add_argument("--g", required=True)
        p.add_argument("--assume-consistent", action="store_true")
        p.add_argument("--workers", type=int, default=1)

    p = add("eval-wfa", cmd_eval_wfa, "weight of a word under an automaton")
    p.add_argument("--machine", required=True)
    p.add_argument("--word", default="")
    p = add("eval-rnn", cmd_eval_rnn, "weight of a word under an RNN-LM")
    p.add_argument("--machine", required=True)
    p.add_argument("--word", default="")
    p.add_argument("--precision", type=int, default=64)
    p = add("compile", cmd_compile, "compile a TM / two-stack machine into a ReLU RNN")
    p.add_argument("--machine", required=True)
    p.add_argument("--input")
    p.add_argument("--out", required=True)
    p.add_argument("--gadget", action="store_true", help="attach the unary output gadget")
    p = add("simulate", cmd_simulate, "run a compiled RNN and report halting/stack neurons")
    p.add_argument("--machine", required=True)
    p.add_argument("--boundaries", type=int, default=50)
    p = add("reduce-sat", cmd_reduce_sat, "build the PFA and RNN of the 3-SAT reduction")
    p.add_argument("--cnf", required=True)
    p.add_argument("--epsilon", default="1/10")
    p.add_argument("--s")
    p.add_argument("--out-pfa")
    p.add_argument("--out-rnn")
    p.add_argument("--print-threshold", action="store_true")
    p = add("distance-decide", cmd_distance_decide, "is there a word with |f - g| > c?")
    pair(p)
    p.add_argument("--c", required=True)
    p.add_argument("--budget", type=int)
    p = add("distance-finite", cmd_distance_finite, "max |f - g| over words of length <= N")
    pair(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--c")
    p = add("eq-finite", cmd_eq_finite, "equivalence over words of length <= m")
    pair(p)
    p.add_argument("--m", type=int, required=True)
    for name, func, help in (("consensus", cmd_consensus, "first word with f(w) > c"),
                             ("cutpoint", cmd_cutpoint, "first DFA-accepted word with f(w) >= c")):
        p = add(name, func, help)
        p.add_argument("--f", required=True)
        p.add_argument("--c", required=True)
        p.add_argument("--max-len", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        if name == "cutpoint":
            p.add_argument("--dfa", required=True)
    p = add("sat", cmd_sat, "decide 3-SAT through the distance reduction")
    p.add_argument("--cnf", required=True)
    p.add_argument("--epsilon", default="1/10")
    p.add_argument("--s")
    p.add_argument("--workers", type=int, default=1)
    p = add("verify", cmd_verify, "run the acceptance suite")
    p.add_argument("--suite", default="paper", choices=["paper"])
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--json", action="store_true", help="emit a JSON manifest instead of the table")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    run = Run(args)
    try:
        code, manifest = args.func(run)
    except Exception as exc:
        log.debug("command failed", exc_info=True)
        print(json.dumps({"command": args.command,
                          "error": {"type": type(exc).__name__, "message": str(exc)}}))
        return EXIT_ERROR
    if manifest is not None:
        print(json.dumps(manifest, indent=1, sort_keys=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
