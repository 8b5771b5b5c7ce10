"""3-SAT -> (PFA, memoryless RNN) reduction with closed-form weights and the separating threshold."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .automata import WeightedAutomaton
from .core import Alphabet, Word
from .rnn import RnnLm

BINARY = Alphabet(("0", "1"))


@dataclass(frozen=True)
class CnfFormula:
    """``clauses`` hold DIMACS literals: +v for x_v, -v for its negation."""

    num_vars: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in c):
                raise ValueError(f"clause {c} references a variable outside 1..{self.num_vars}")
            if len({abs(lit) for lit in c}) != 3:
                raise ValueError(f"clause {c} mentions a variable twice")

    @property
    def k(self) -> int:
        return len(self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.k}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValueError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise ValueError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValueError(f"line {lineno}: bad literal {tok!r}") from None
            if lit:
                current.append(lit)
                continue
            if not current:
                raise ValueError(f"line {lineno}: empty clause")
            if len(current) != 3:
                raise ValueError(f"line {lineno}: clause {current} has width {len(current)}, expected 3")
            clauses.append(tuple(current))
            current = []
    if header is None:
        raise ValueError("missing 'p cnf' header")
    if current:
        raise ValueError("last clause is not terminated by 0")
    n, k = header
    if len(clauses) != k:
        raise ValueError(f"header announces {k} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def _assignment(w: Union[str, Sequence[str]]) -> Tuple[int, ...]:
    return tuple(int(b) for b in w)


def satisfies(clause, bits: Sequence[int]) -> bool:
    return any(bits[abs(lit) - 1] == (lit > 0) for lit in clause)


def count_satisfied_clauses(F: CnfFormula, w) -> int:
    bits = _assignment(w)
    if len(bits) != F.num_vars:
        raise ValueError(f"assignment has length {len(bits)}, formula has {F.num_vars} variables")
    return sum(satisfies(c, bits) for c in F.clauses)


def max_satisfied(F: CnfFormula) -> int:
    return max(count_satisfied_clauses(F, w) for w in itertools.product((0, 1), repeat=F.num_vars))


def brute_force_sat(F: CnfFormula) -> bool:
    return any(
        all(satisfies(c, w) for c in F.clauses) for w in itertools.product((0, 1), repeat=F.num_vars)
    )


@dataclass(frozen=True)
class ReductionParams:
    epsilon: Fraction = Fraction(1, 10)
    s: Optional[Fraction] = None  # defaults to k - 1/2

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.s is not None:
            object.__setattr__(self, "s", Fraction(self.s))
        if not 0 < self.epsilon < Fraction(1, 4):
            raise ValueError(f"epsilon must lie in (0, 1/4), got {self.epsilon}")

    def s_for(self, k: int) -> Fraction:
        s = Fraction(2 * k - 1, 2) if self.s is None else self.s
        if not k - 1 <= s < k:
            raise ValueError(f"s must lie in [k-1, k) = [{k - 1}, {k}), got {s}")
        return s


def _literal_for(clause, var: int) -> Optional[int]:
    for lit in clause:
        if abs(lit) == var:
            return lit
    return None


def build_reduction_pfa(F: CnfFormula, p: ReductionParams, prune: bool = True) -> WeightedAutomaton:
    """Two paths per clause; state (i, j, T) means the first j symbols already satisfy clause i.

    T paths absorb with weight 1/2 - eps per symbol until level n; a satisfied
    clause at level n stops with 1 - 2 eps, or leaks eps per symbol into its
    level-n F state, which loops with 1/2 - eps. Every other state stops with 2 eps.
    """
    eps, n, k = p.epsilon, F.num_vars, F.k
    if k == 0:
        raise ValueError("formula has no clauses")
    half = Fraction(1, 2) - eps
    index = {"q0": 0}
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            for c in "TF":
                index[i, j, c] = len(index)

    def target(i, j, b):
        lit = _literal_for(F.clauses[i - 1], j)
        hit = lit is not None and (lit > 0) == (b == "1")
        return index[i, j, "T" if hit else "F"]

    arcs = []
    for b in BINARY.symbols:
        for i in range(1, k + 1):
            arcs.append((0, b, target(i, 1, b), Fraction(1, 2 * k) - eps / k))
    for i in range(1, k + 1):
        for j in range(1, n):
            for b in BINARY.symbols:
                arcs.append((index[i, j, "T"], b, index[i, j + 1, "T"], half))
                arcs.append((index[i, j, "F"], b, target(i, j + 1, b), half))
        for b in BINARY.symbols:
            arcs.append((index[i, n, "T"], b, index[i, n, "F"], eps))
            arcs.append((index[i, n, "F"], b, index[i, n, "F"], half))
    final = {q: 2 * eps for q in index.values()}
    for i in range(1, k + 1):
        final[index[i, n, "T"]] = 1 - 2 * eps

    names = ["q0"] + [f"q{i},{j}{c}" for (i, j, c) in list(index)[1:]]
    keep = list(range(len(index)))
    if prune:
        succ = {}
        for src, _, dst, _ in arcs:
            succ.setdefault(src, set()).add(dst)
        seen, todo = {0}, deque([0])
        while todo:
            q = todo.popleft()
            for r in succ.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        keep = sorted(seen)
    remap = {old: new for new, old in enumerate(keep)}
    return WeightedAutomaton(
        BINARY,
        len(keep),
        {0: Fraction(1)},
        {remap[q]: w for q, w in final.items() if q in remap},
        [(remap[s], b, remap[d], w) for s, b, d, w in arcs if s in remap],
        declared_consistent=True,
        names=[names[q] for q in keep],
    )


def toy_logit(epsilon: Fraction) -> int:
    """log2((1 - 2 eps) / (4 eps)) when it is an integer (eps = 1/(2^(L+2) + 2))."""
    ratio = (1 - 2 * Fraction(epsilon)) / (4 * Fraction(epsilon))
    num, den = ratio.numerator, ratio.denominator
    if num & (num - 1) == 0 and den == 1:
        return num.bit_length() - 1
    if num == 1 and den & (den - 1) == 0:
        return -(den.bit_length() - 1)
    raise ValueError(
        f"log2((1-2e)/(4e)) is irrational for e={epsilon}; use e = 1/(2^(L+2)+2) for an exact RNN"
    )


def exact_epsilon(L: int) -> Fraction:
    return Fraction(1, 2 ** (L + 2) + 2)


def build_toy_rnn(p: ReductionParams, alphabet: Alphabet = BINARY) -> RnnLm:
    """Memoryless RNN with R(w) = 2 (1/2 - eps)^|w| eps; the hidden state never moves."""
    L = toy_logit(p.epsilon)
    zero2 = (Fraction(0), Fraction(0))
    identity = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    rows = [(Fraction(1), Fraction(0))] * len(alphabet) + [(Fraction(0), Fraction(1))]
    bias = [Fraction(L)] * len(alphabet) + [Fraction(0)]
    return RnnLm(
        alphabet, 2, zero2, identity, {s: zero2 for s in alphabet.with_end},
        tuple(rows), tuple(bias), "relu", declared_consistent=True,
    )


def toy_weight(p: ReductionParams, w: Word) -> Fraction:
    eps = p.epsilon
    return 2 * (Fraction(1, 2) - eps) ** len(w) * eps


def closed_form_pfa_weight(F: CnfFormula, p: ReductionParams, w: Word) -> Fraction:
    eps, n, k = p.epsilon, F.num_vars, F.k
    base = 2 * (Fraction(1, 2) - eps) ** len(w) * eps
    if len(w) < n:
        return base
    sat = count_satisfied_clauses(F, w[:n])
    if len(w) == n:
        return base * (Fraction(sat, k) * (1 - 2 * eps) / (2 * eps) + Fraction(k - sat, k))
    return base * (Fraction(sat, k) * (2 * eps) / (1 - 2 * eps) + Fraction(k - sat, k))


def reduction_threshold(F: CnfFormula, p: ReductionParams) -> Fraction:
    """c = (s/k) (1/2 - eps)^n (1 - 4 eps)."""
    k = F.k
    s = p.s_for(k)
    return s / k * (Fraction(1, 2) - p.epsilon) ** F.num_vars * (1 - 4 * p.epsilon)


def predicted_distance(F: CnfFormula, p: ReductionParams) -> Fraction:
    """(1/k) (1/2 - eps)^n (1 - 4 eps) max_w N_w, via brute-force max-SAT."""
    eps = p.epsilon
    return Fraction(max_satisfied(F), F.k) * (Fraction(1, 2) - eps) ** F.num_vars * (1 - 4 * eps)
