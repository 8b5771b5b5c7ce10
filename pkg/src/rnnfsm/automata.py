"""Weighted finite automata, PFA/DPFA validation and plain DFAs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import Alphabet, WeightedLanguage, Word

Transition = Tuple[int, str, int, Fraction]


class WeightedAutomaton(WeightedLanguage):
    """WFA over ``alphabet`` with states ``0..num_states-1``.

    ``transitions`` are ``(source, symbol, target, weight)``; absent initial/final
    entries are zero. Transitions are kept sparse, indexed by (source, symbol).
    """

    def __init__(
        self,
        alphabet: Alphabet,
        num_states: int,
        initial: Mapping[int, Fraction],
        final: Mapping[int, Fraction],
        transitions: Sequence[Transition],
        declared_consistent: bool = False,
        names: Optional[Sequence[str]] = None,
    ):
        self.alphabet = alphabet
        self.num_states = num_states
        self.declared_consistent = declared_consistent
        self.names = tuple(names) if names is not None else tuple(f"q{i}" for i in range(num_states))
        if len(self.names) != num_states:
            raise ValueError("one name per state required")
        self.initial = {q: Fraction(v) for q, v in initial.items() if v != 0}
        self.final = {q: Fraction(v) for q, v in final.items() if v != 0}
        for q in list(self.initial) + list(self.final):
            self._check_state(q)
        seen = set()
        arcs: Dict[Tuple[int, str], List[Tuple[int, Fraction]]] = defaultdict(list)
        for src, sym, dst, w in transitions:
            self._check_state(src)
            self._check_state(dst)
            if sym not in alphabet:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
            if (src, sym, dst) in seen:
                raise ValueError(f"duplicate transition {(src, sym, dst)}")
            seen.add((src, sym, dst))
            if w != 0:
                arcs[src, sym].append((dst, Fraction(w)))
        self.arcs = dict(arcs)

    def _check_state(self, q):
        if not (isinstance(q, int) and 0 <= q < self.num_states):
            raise ValueError(f"unknown state {q!r}")

    @property
    def transitions(self) -> List[Transition]:
        return [(src, sym, dst, w) for (src, sym), out in self.arcs.items() for dst, w in out]

    def __eq__(self, other):
        if not isinstance(other, WeightedAutomaton):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.num_states == other.num_states
            and self.initial == other.initial
            and self.final == other.final
            and sorted(self.transitions) == sorted(other.transitions)
        )

    def __repr__(self):
        return f"WeightedAutomaton(states={self.num_states}, transitions={len(self.transitions)})"

    # forward algorithm over sparse rational vectors

    def start(self, precision: int = 64):
        return dict(self.initial)

    def advance(self, state, sym, precision: int = 64):
        nxt: Dict[int, Fraction] = {}
        for q, v in state.items():
            for dst, w in self.arcs.get((q, sym), ()):
                nxt[dst] = nxt.get(dst, 0) + v * w
        return nxt

    def finish(self, state, precision: int = 64) -> Fraction:
        return sum((v * self.final[q] for q, v in state.items() if q in self.final), Fraction(0))

    def weight(self, w: Word, precision: int = 64) -> Fraction:
        self.alphabet.check(w)
        state = self.start()
        for sym in w:
            state = self.advance(state, sym)
        return self.finish(state)


def wfa_weight(A: WeightedAutomaton, w: Word) -> Fraction:
    return A.weight(tuple(w))


@dataclass(frozen=True)
class Violation:
    state: Optional[int]  # None for the global initial-weight constraint
    kind: str  # global-initial | row-sum | range | nondeterministic
    observed: Fraction
    expected: Fraction


@dataclass
class PfaValidationReport:
    is_pfa: bool
    is_dpfa: bool
    violations: List[Violation] = field(default_factory=list)


def validate_pfa(A: WeightedAutomaton) -> PfaValidationReport:
    """Check stochasticity exactly; violations are reported, never raised."""
    violations = []
    total_initial = sum(A.initial.values(), Fraction(0))
    if total_initial != 1:
        violations.append(Violation(None, "global-initial", total_initial, Fraction(1)))
    weights = [(q, v) for q, v in A.initial.items()] + [(q, v) for q, v in A.final.items()]
    weights += [(src, w) for src, _, _, w in A.transitions]
    for q, v in weights:
        if v < 0:
            violations.append(Violation(q, "range", v, Fraction(0)))
        elif v > 1:
            violations.append(Violation(q, "range", v, Fraction(1)))
    out = defaultdict(Fraction)
    for src, _, _, w in A.transitions:
        out[src] += w
    for q in range(A.num_states):
        row = A.final.get(q, Fraction(0)) + out[q]
        if row != 1:
            violations.append(Violation(q, "row-sum", row, Fraction(1)))
    is_pfa = not violations
    for (src, _sym), targets in A.arcs.items():
        if len(targets) > 1:
            violations.append(Violation(src, "nondeterministic", Fraction(len(targets)), Fraction(1)))
    is_dpfa = is_pfa and not any(v.kind == "nondeterministic" for v in violations)
    return PfaValidationReport(is_pfa, is_dpfa, violations)


def build_trivial_unary_dpfa() -> WeightedAutomaton:
    """One state over {a}: loop 1/2, stop 1/2, so f(a^n) = 1/2^(n+1)."""
    half = Fraction(1, 2)
    return WeightedAutomaton(
        Alphabet(("a",)), 1, {0: Fraction(1)}, {0: half}, [(0, "a", 0, half)], declared_consistent=True
    )


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    num_states: int
    start: int
    accepting: frozenset
    delta: Mapping  # (state, symbol) -> state; missing means reject

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", dict(self.delta))
        states = range(self.num_states)
        if self.start not in states or not self.accepting <= set(states):
            raise ValueError("DFA references unknown states")
        for (q, sym), r in self.delta.items():
            if q not in states or r not in states or sym not in self.alphabet:
                raise ValueError(f"bad DFA transition {(q, sym, r)}")

    @classmethod
    def universal(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, 1, 0, {0}, {(0, s): 0 for s in alphabet.symbols})

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, 1, 0, set(), {(0, s): 0 for s in alphabet.symbols})

    @classmethod
    def exact_length(cls, alphabet: Alphabet, n: int) -> "Dfa":
        delta = {(i, s): i + 1 for i in range(n) for s in alphabet.symbols}
        return cls(alphabet, n + 1, 0, {n}, delta)


def dfa_accepts(D: Dfa, w: Word) -> bool:
    D.alphabet.check(w)
    q = D.start
    for sym in w:
        q = D.delta.get((q, sym))
        if q is None:
            return False
    return q in D.accepting
