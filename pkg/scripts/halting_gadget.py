"""Compile machines that halt after k steps, attach the unary output gadget, and find where it
stops agreeing with the one-state automaton f(a^n) = 1/2^(n+1).

    python3 scripts/halting_gadget.py --max-steps 6
"""

import argparse
import time

from rnnfsm.automata import build_trivial_unary_dpfa
from rnnfsm.compiler import STEP_DILATION, attach_output_gadget, compile_two_stack
from rnnfsm.decision import Counterexample, eq_finite
from rnnfsm.machines_zoo import halts_at, looper


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-steps", type=int, default=6)
    args = ap.parse_args()

    dpfa = build_trivial_unary_dpfa()
    print(f"step dilation = {STEP_DILATION}")
    print(" halt_step  hidden_dim  first_disagreement  weight_there  seconds")
    for k in range(1, args.max_steps + 1):
        S, inp = halts_at(k)
        t0 = time.perf_counter()
        G = attach_output_gadget(compile_two_stack(S, inp))
        res = eq_finite(dpfa, G, STEP_DILATION * (k + 1))
        where = len(res.word) if isinstance(res, Counterexample) else None
        value = res.g_weight if isinstance(res, Counterexample) else None
        print(f"{k:>10}  {G.hidden_dim:>10}  {where!s:>18}  {value!s:>12}  {time.perf_counter() - t0:7.2f}")
    G = attach_output_gadget(compile_two_stack(looper()))
    m = STEP_DILATION * (args.max_steps + 1)
    print(f"looper, m={m}: {type(eq_finite(dpfa, G, m)).__name__}")


if __name__ == "__main__":
    main()
