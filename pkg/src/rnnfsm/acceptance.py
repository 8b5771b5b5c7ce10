"""Acceptance criteria, runnable from pytest and ``rnnfsm verify``."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from .automata import build_trivial_unary_dpfa, validate_pfa, wfa_weight
from .compiler import (
    LITERAL_CODEC, STEP_DILATION, attach_output_gadget, compile_two_stack, decode_stack, encode_stack,
    encode_stack_literal, simulate,
)
from .core import shortlex_enumerate
from .decision import Counterexample, Equivalent, decide_tchebychev_gt, eq_finite, finite_support_distance
from .decision import sat_via_distance
from .machines_zoo import ZOO, halts_at, looper, mover, parity_marker, shuttle
from .reduction import (
    CnfFormula, ReductionParams, brute_force_sat, build_reduction_pfa, build_toy_rnn,
    closed_form_pfa_weight, count_satisfied_clauses, max_satisfied, parse_dimacs, reduction_threshold,
)
from .rnn import rnn_weight

EXAMPLE_CNF = "p cnf 4 2\n1 2 3 0\n-2 3 4 0\n"
EPS = Fraction(1, 10)


def random_3cnf(rng: random.Random, n: int, k: int) -> CnfFormula:
    clauses = []
    for _ in range(k):
        vs = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n, tuple(clauses))


def small_corpus(count: int = 100, seed: int = 2020) -> List[CnfFormula]:
    rng = random.Random(seed)
    return [random_3cnf(rng, rng.randint(3, 6), rng.randint(1, 8)) for _ in range(count)]


def all_signs(vars3: Tuple[int, int, int]) -> List[Tuple[int, int, int]]:
    return [tuple(v if s else -v for v, s in zip(vars3, signs)) for signs in itertools.product((1, 0), repeat=3)]


def unsat_family(seed: int = 7) -> List[CnfFormula]:
    """Every sign pattern over one variable triple, optionally padded with random clauses."""
    rng = random.Random(seed)
    out = [CnfFormula(3, tuple(all_signs((1, 2, 3))))]
    for n in range(4, 11):
        triple = tuple(rng.sample(range(1, n + 1), 3))
        pad = random_3cnf(rng, n, rng.randint(0, 6)).clauses
        clauses = list(all_signs(triple)) + list(pad)
        rng.shuffle(clauses)
        out.append(CnfFormula(n, tuple(clauses)))
    return out


def large_corpus(count: int = 200, seed: int = 5) -> List[CnfFormula]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, 10)
        k = rng.randint(1, int(5.5 * n))  # straddles the 3-SAT phase transition near 4.26 n
        out.append(random_3cnf(rng, n, k))
    return out


# --- criteria -----------------------------------------------------------------------------


def c1_trivial_dpfa():
    A = build_trivial_unary_dpfa()
    bad = [n for n in range(65) if wfa_weight(A, ("a",) * n) != Fraction(1, 2 ** (n + 1))]
    return not bad, f"n=0..64 exact; mismatches={bad}"


def c2_toy_rnn():
    R = build_toy_rnn(ReductionParams(EPS))
    bad, level_mass = 0, [Fraction(0)] * 13
    for w in shortlex_enumerate(R.alphabet, 12):
        wt = rnn_weight(R, w)
        bad += wt != 2 * Fraction(2, 5) ** len(w) * EPS
        level_mass[len(w)] += wt
    mass_bad = [L for L in range(13) if sum(level_mass[: L + 1]) != 1 - Fraction(4, 5) ** (L + 1)]
    return bad == 0 and not mass_bad, f"8191 words, weight mismatches={bad}, mass mismatches={mass_bad}"


def c3_closed_form():
    p = ReductionParams(EPS)
    checked = 0
    for F in small_corpus():
        A = build_reduction_pfa(F, p)
        for w in shortlex_enumerate(A.alphabet, F.num_vars + 2):
            if wfa_weight(A, w) != closed_form_pfa_weight(F, p, w):
                return False, f"mismatch on {F} at {''.join(w)!r}"
            checked += 1
    return True, f"100 formulas, {checked} words, all exact"


def c4_pfa_validity():
    eps_values = [Fraction(1, 10), Fraction(1, 18), Fraction(1, 5) - Fraction(1, 100)]
    corpus = small_corpus() + unsat_family()
    failures = [
        (eps, F) for eps in eps_values for F in corpus
        if not validate_pfa(build_reduction_pfa(F, ReductionParams(eps))).is_pfa
    ]
    return not failures, f"{len(corpus) * len(eps_values)} PFAs, failures={len(failures)}"


def c5_distance_identity():
    p = ReductionParams(EPS)
    R = build_toy_rnn(p)
    for F in small_corpus():
        rep = finite_support_distance(R, build_reduction_pfa(F, p), F.num_vars + 1)
        expected = (Fraction(max_satisfied(F), F.k) * (Fraction(1, 2) - EPS) ** F.num_vars * (1 - 4 * EPS))
        if rep.distance != expected or len(rep.argmax) != F.num_vars:
            return False, f"{F}: got {rep.distance} at {rep.argmax}, expected {expected}"
    example = parse_dimacs(EXAMPLE_CNF)
    d = finite_support_distance(R, build_reduction_pfa(example, p), 5).distance
    c = reduction_threshold(example, ReductionParams(EPS, s=1))
    ok = d == Fraction(192, 12500) and c == Fraction(96, 12500)
    return ok, f"100 formulas exact; example distance={d}, threshold(s=1)={c}"


def c6_sat_oracle():
    corpus = large_corpus() + unsat_family()
    disagreements = [F for F in corpus if sat_via_distance(F, ReductionParams(EPS)) != brute_force_sat(F)]
    n_sat = sum(brute_force_sat(F) for F in corpus)
    return not disagreements, (
        f"{len(corpus)} formulas ({n_sat} sat, {len(corpus) - n_sat} unsat), disagreements={len(disagreements)}"
    )


def c7_threshold_procedure():
    p = ReductionParams(EPS)
    F = parse_dimacs(EXAMPLE_CNF)
    R, A = build_toy_rnn(p), build_reduction_pfa(F, p)
    c_yes = Fraction(96, 12500)
    yes = decide_tchebychev_gt(R, A, c_yes)
    yes_ok = (
        yes.outcome == "yes" and len(yes.witness) == 4
        and abs(rnn_weight(R, yes.witness) - wfa_weight(A, yes.witness)) > c_yes
    )
    c_no = Fraction(1, 5)
    no = decide_tchebychev_gt(R, A, c_no)
    # independent replay with the closed forms
    words = list(itertools.islice(shortlex_enumerate(R.alphabet), no.words_examined))
    toy = lambda w: 2 * (Fraction(1, 2) - EPS) ** len(w) * EPS
    mf = sum(toy(w) for w in words)
    mg = sum(closed_form_pfa_weight(F, p, w) for w in words)
    prev_f, prev_g = mf - toy(words[-1]), mg - closed_form_pfa_weight(F, p, words[-1])
    L = len(words[-1])
    level_L = next(L for L in itertools.count() if 1 - Fraction(4, 5) ** (L + 1) >= 1 - c_no)
    no_ok = (
        no.outcome == "no" and no.mass_f == mf and no.mass_g == mg
        and mf >= 1 - c_no and mg >= 1 - c_no and not (prev_f >= 1 - c_no and prev_g >= 1 - c_no)
        and L == level_L
    )
    return yes_ok and no_ok, (
        f"c=96/12500 -> {yes.outcome} witness={''.join(yes.witness or ())} |diff|={yes.difference}; "
        f"c=1/5 -> {no.outcome} after {no.words_examined} words (length {L}), masses {no.mass_f}, {no.mass_g}"
    )


def c8_bisimulation(boundaries: int = 200):
    cases = [halts_at(k) for k in range(1, 11)]
    rng = random.Random(8)
    for make in (ZOO["mover"], ZOO["shuttle"], ZOO["parity_marker"], ZOO["push_pop"]):
        for _ in range(2):
            cases.append((make(), tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))))
    cases.append((looper(), (1, 0, 1)))
    seen_halts = set()
    for S, inp in cases:
        direct = S.run(inp, boundaries)
        h = S.halting_step(inp, boundaries)
        trace = simulate(compile_two_stack(S, inp), boundaries)
        for entry, cfg in zip(trace, direct):
            if entry.config != cfg:
                return False, f"configuration mismatch at boundary {entry.boundary} ({S.states}, {inp})"
            if entry.halt_value != (h is not None and entry.boundary >= h):
                return False, f"halting neuron wrong at boundary {entry.boundary} ({S.states}, {inp})"
        seen_halts.add(h)
    ok = set(range(1, 11)) <= seen_halts and None in seen_halts
    return ok, f"{len(cases)} runs x {boundaries} boundaries; halting steps seen {sorted(x for x in seen_halts if x)}"


def c9_gadget_eq_finite():
    dpfa = build_trivial_unary_dpfa()
    never = attach_output_gadget(compile_two_stack(looper()))
    eq = eq_finite(dpfa, never, 10)
    S, inp = halts_at(3)
    halting = attach_output_gadget(compile_two_stack(S, inp))
    first_post_halt = STEP_DILATION * 3 - 1
    prefix_ok = all(rnn_weight(halting, ("a",) * n) == Fraction(1, 2 ** (n + 1)) for n in range(first_post_halt))
    cex = eq_finite(dpfa, halting, first_post_halt + 3)
    ok = (
        isinstance(eq, Equivalent) and prefix_ok and isinstance(cex, Counterexample)
        and len(cex.word) == first_post_halt
    )
    where = len(cex.word) if isinstance(cex, Counterexample) else None
    return ok, (
        f"looper m=10 -> {type(eq).__name__}; halt@3 (kappa={STEP_DILATION}) -> counterexample at length "
        f"{where}, expected {first_post_halt}"
    )


def c10_stack_codec():
    rng = random.Random(10)
    bad = 0
    for _ in range(10_000):
        bits = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 30)))
        bad += decode_stack(encode_stack(bits)) != bits
    collide = encode_stack_literal((1,)) == encode_stack_literal((1, 0))
    flagged = LITERAL_CODEC.injective is False
    return bad == 0 and collide and flagged, (
        f"10000 round trips, failures={bad}; literal('1')=literal('10')={encode_stack_literal((1,))}"
    )


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit_seconds: float
    check: Callable[[], Tuple[bool, str]]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit_seconds: float


CRITERIA = [
    Criterion(1, "trivial DPFA weights 1/2^(n+1)", 1, c1_trivial_dpfa),
    Criterion(2, "toy RNN closed form and mass", 30, c2_toy_rnn),
    Criterion(3, "reduction PFA forward = closed form", 300, c3_closed_form),
    Criterion(4, "reduction PFA stochasticity", 60, c4_pfa_validity),
    Criterion(5, "finite-support distance identity", 300, c5_distance_identity),
    Criterion(6, "SAT via distance = brute force", 600, c6_sat_oracle),
    Criterion(7, "threshold decision procedure", 60, c7_threshold_procedure),
    Criterion(8, "compiled RNN bisimulation and halting", 120, c8_bisimulation),
    Criterion(9, "output gadget and EQ-Finite", 60, c9_gadget_eq_finite),
    Criterion(10, "stack codec round trip", 10, c10_stack_codec),
]


def run_criterion(c: Criterion) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as exc:  # reported as a failure, not a crash of the whole suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if dt >= c.limit_seconds:
        ok, detail = False, f"{detail}; too slow ({dt:.1f}s >= {c.limit_seconds}s)"
    return CriterionResult(c.number, c.title, ok, detail, dt, c.limit_seconds)


def format_result(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    cmp = "<" if r.seconds < r.limit_seconds else ">="
    return f"[{status}] {r.number:2d}. {r.title} ({r.seconds:.2f}s {cmp} {r.limit_seconds:g}s): {r.detail}"
