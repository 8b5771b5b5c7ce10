import itertools
import random
from fractions import Fraction

import pytest

from rnnfsm.automata import Dfa, WeightedAutomaton, build_trivial_unary_dpfa
from rnnfsm.core import Alphabet, shortlex_enumerate
from rnnfsm.decision import (
    Counterexample, Equivalent, InconsistencyDetected, bounded_consensus_search, bounded_cutpoint_intersection,
    decide_tchebychev_gt, eq_finite, finite_support_distance, iter_weights, sat_via_distance,
)
from rnnfsm.interval import ExactnessUnavailable, Interval, pow2
from rnnfsm.reduction import (
    BINARY, CnfFormula, ReductionParams, brute_force_sat, build_reduction_pfa, build_toy_rnn, parse_dimacs,
)
from rnnfsm.rnn import RnnLm

F = Fraction
P = ReductionParams()
EXAMPLE_CNF = parse_dimacs("p cnf 4 2\n1 2 3 0\n-2 3 4 0\n")


@pytest.fixture(scope="module")
def pair():
    return build_toy_rnn(P), build_reduction_pfa(EXAMPLE_CNF, P)


def random_formula(rng, n, k):
    return CnfFormula(n, tuple(
        tuple(v if rng.random() < .5 else -v for v in rng.sample(range(1, n + 1), 3)) for _ in range(k)
    ))


def test_self_distance_is_no():
    R = build_toy_rnn(P)
    v = decide_tchebychev_gt(R, build_toy_rnn(P), F(1, 100))
    assert v.outcome == "no" and v.witness is None


def test_yes_with_length_n_witness(pair):
    R, A = pair
    c = F(96, 12500)
    v = decide_tchebychev_gt(R, A, c)
    assert v.outcome == "yes" and len(v.witness) == 4
    assert abs(R.weight(v.witness) - A.weight(v.witness)) == v.difference == F(192, 12500) > c


def test_no_when_threshold_above_distance(pair):
    R, A = pair
    c = F(1, 5)
    v = decide_tchebychev_gt(R, A, c)
    assert v.outcome == "no"
    assert v.mass_f >= 1 - c and v.mass_g >= 1 - c
    examined = list(itertools.islice(shortlex_enumerate(BINARY), v.words_examined))
    assert sum(R.weight(w) for w in examined) == v.mass_f
    assert all(abs(R.weight(w) - A.weight(w)) <= c for w in examined)
    # spot-check words beyond the examined prefix
    rng = random.Random(0)
    for _ in range(1000):
        w = tuple(rng.choice("01") for _ in range(rng.randint(len(examined[-1]), 25)))
        assert abs(R.weight(w) - A.weight(w)) < c


def test_budget_exhaustion_and_budget_independence(pair):
    R, A = pair
    v = decide_tchebychev_gt(R, A, F(1, 5), budget=5)
    assert v.outcome == "budget_exhausted" and v.words_examined == 5
    full = decide_tchebychev_gt(R, A, F(1, 5))
    again = decide_tchebychev_gt(R, A, F(1, 5), budget=full.words_examined + 10)
    assert again == full


def test_worker_count_does_not_change_results(pair):
    R, A = pair
    serial = list(iter_weights((R, A), 9))
    parallel = list(iter_weights((R, A), 9, workers=2))
    assert serial == parallel
    assert finite_support_distance(R, A, 9, workers=2) == finite_support_distance(R, A, 9)
    v1 = decide_tchebychev_gt(R, A, F(1, 10))
    v2 = decide_tchebychev_gt(R, A, F(1, 10), workers=2)
    assert v1 == v2


def test_requires_consistency_and_positive_threshold(pair):
    R, A = pair
    with pytest.raises(ValueError):
        decide_tchebychev_gt(R, A, F(0))
    loose = WeightedAutomaton(BINARY, 1, {0: 1}, {0: F(1, 3)}, [(0, "0", 0, F(1, 3)), (0, "1", 0, F(1, 3))])
    with pytest.raises(ValueError):
        decide_tchebychev_gt(R, loose, F(1, 10))


def test_inconsistency_is_certified_not_guessed():
    a = Alphabet(("a",))
    # f(empty word) = 3/2 already certifies mass > 1; the copy with a dead state keeps differences at 0
    heavy = WeightedAutomaton(a, 1, {0: 1}, {0: F(3, 2)}, [(0, "a", 0, F(1, 2))], declared_consistent=True)
    copy = WeightedAutomaton(a, 2, {0: 1}, {0: F(3, 2)}, [(0, "a", 0, F(1, 2))], declared_consistent=True)
    with pytest.raises(InconsistencyDetected):
        decide_tchebychev_gt(heavy, copy, F(1, 100))
    # a deficient language never reaches the mass bound: budget reports it
    light = WeightedAutomaton(a, 1, {0: F(1, 2)}, {0: F(1, 2)}, [(0, "a", 0, F(1, 2))], declared_consistent=True)
    v = decide_tchebychev_gt(light, build_trivial_unary_dpfa(), F(1, 3), budget=200)
    assert v.outcome == "budget_exhausted"


def test_finite_distance_examples(pair):
    R, A = pair
    rep = finite_support_distance(R, A, 5)
    assert rep.distance == F(192, 12500) and len(rep.argmax) == 4
    assert finite_support_distance(R, A, 3).distance == 0
    same = finite_support_distance(R, R, 4)
    assert same.distance == 0 and same.argmax == ()


def test_finite_distance_monotone_and_constant_from_n(pair):
    R, A = pair
    ds = [finite_support_distance(R, A, N).distance for N in range(8)]
    assert ds == sorted(ds)
    assert len(set(ds[4:])) == 1


def test_eq_finite(pair):
    R, A = pair
    assert eq_finite(R, R, 6) == Equivalent(6)
    assert isinstance(eq_finite(R, A, 3), Equivalent)
    cex = eq_finite(R, A, 5)
    assert isinstance(cex, Counterexample) and len(cex.word) == 4 and cex.f_weight != cex.g_weight


def test_consensus_examples():
    R = build_toy_rnn(P)
    assert bounded_consensus_search(R, F(1, 6), 5) == ()
    assert bounded_consensus_search(R, F(1, 4), 8) is None
    assert bounded_consensus_search(R, F(1), 6) is None
    # strict inequality: f(empty word) = 1/5 does not exceed 1/5
    assert bounded_consensus_search(R, F(1, 5), 6) is None


def test_cutpoint_examples(pair):
    R, A = pair
    c = A.weight(tuple("1111"))
    assert bounded_cutpoint_intersection(A, c, Dfa.exact_length(BINARY, 4), 6) == tuple("0010")
    assert bounded_cutpoint_intersection(A, c, Dfa.empty(BINARY), 6) is None
    # non-strict: the universal DFA reduces to consensus with >=
    assert bounded_cutpoint_intersection(R, F(1, 5), Dfa.universal(BINARY), 3) == ()
    with pytest.raises(ValueError):
        bounded_cutpoint_intersection(R, c, Dfa.universal(Alphabet(("a",))), 3)


def test_sat_via_distance_examples():
    assert sat_via_distance(EXAMPLE_CNF)
    unsat = CnfFormula(3, tuple(tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                                for signs in itertools.product((1, -1), repeat=3)))
    assert not sat_via_distance(unsat)
    assert sat_via_distance(CnfFormula(3, ((-1, 2, -3),)))


def test_sat_via_distance_random():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(3, 6)
        Fm = random_formula(rng, n, rng.randint(1, 3 * n))
        assert sat_via_distance(Fm) == brute_force_sat(Fm)


def irrational_rnn():
    """Logits (1/2, 1/2, 0): every weight is irrational."""
    z, one, half = (F(0),), (F(1),), (F(1, 2),)
    return RnnLm(BINARY, 1, (F(1),), (one,), {s: z for s in BINARY.with_end},
                 (half, half, z), (F(0),) * 3, declared_consistent=True)


def test_interval_weights_refine_to_a_verdict():
    R = irrational_rnn()
    exact_stop = R.weight((), 300)
    assert isinstance(exact_stop, Interval)
    # a threshold just below f(empty word): undecidable at 64 bits, decidable after refinement
    c = exact_stop.lower - F(1, 2 ** 90)
    with pytest.raises(ExactnessUnavailable):
        bounded_consensus_search(R, c, 0, max_precision=64)
    assert bounded_consensus_search(R, c, 0) == ()


def test_interval_distance_against_exact_model():
    R = irrational_rnn()
    T = build_toy_rnn(P)
    v = decide_tchebychev_gt(R, T, F(1, 20), budget=10_000)
    assert v.outcome in ("yes", "no")
    if v.outcome == "yes":
        d = abs(R.weight(v.witness, 256) - T.weight(v.witness))
        assert d.lower > F(1, 20)
