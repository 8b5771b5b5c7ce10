"""Build the 3-SAT reduction pair for a DIMACS file and show where the two languages differ.

    python3 scripts/reduction_demo.py data/example.cnf --epsilon 1/10
"""

import argparse
from pathlib import Path

from rnnfsm.core import format_rational, parse_rational
from rnnfsm.decision import finite_support_distance, reduction_pair
from rnnfsm.reduction import ReductionParams, count_satisfied_clauses, parse_dimacs, reduction_threshold


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("cnf", type=Path)
    ap.add_argument("--epsilon", default="1/10")
    ap.add_argument("--s", default=None)
    args = ap.parse_args()

    F = parse_dimacs(args.cnf.read_text())
    p = ReductionParams(parse_rational(args.epsilon), parse_rational(args.s) if args.s else None)
    rnn, pfa = reduction_pair(F, p)
    n = F.num_vars
    print(f"n={n} k={F.k} pfa_states={pfa.num_states} epsilon={format_rational(p.epsilon)}")
    print(f"{'word':>{n + 1}}  sat  {'rnn':>14}  {'pfa':>14}  |diff|")
    for bits in range(2 ** n):
        w = tuple(format(bits, f"0{n}b"))
        a, b = rnn.weight(w), pfa.weight(w)
        print(f"{''.join(w):>{n + 1}}  {count_satisfied_clauses(F, w):>3}  {format_rational(a):>14}  "
              f"{format_rational(b):>14}  {format_rational(abs(a - b))}")
    rep = finite_support_distance(rnn, pfa, n + 1)
    c = reduction_threshold(F, p)
    print(f"distance over |w|<={n + 1}: {format_rational(rep.distance)} at {''.join(rep.argmax)!r}")
    print(f"threshold: {format_rational(c)} -> {'satisfiable' if rep.distance > c else 'unsatisfiable'}")


if __name__ == "__main__":
    main()
