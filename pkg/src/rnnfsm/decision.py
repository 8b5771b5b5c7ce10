"""Threshold and bounded decision procedures over weighted languages.

All searches walk words in shortlex order. With ``workers > 1`` each length
level is cut into contiguous chunks (one per fixed-length prefix) that are
evaluated in worker processes; results are consumed in shortlex order, so
verdicts, witnesses and masses do not depend on the worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from .automata import Dfa, dfa_accepts
from .core import WeightedLanguage, Word, weights_by_prefix
from .interval import ExactnessUnavailable, definitely_eq, definitely_gt, definitely_ge, lower_bound
from .reduction import CnfFormula, ReductionParams, build_reduction_pfa, build_toy_rnn, reduction_threshold

DEFAULT_PRECISION = 64
MAX_PRECISION = 1024
_PARALLEL_MIN_LEVEL = 256


class InconsistencyDetected(ValueError):
    """Cumulative mass exceeded 1, so a language declared consistent is not."""


def _check_alphabets(langs: Sequence[WeightedLanguage]):
    first = set(langs[0].alphabet.symbols)
    for lang in langs[1:]:
        if set(lang.alphabet.symbols) != first:
            raise ValueError("languages are over different alphabets")


def _chunk_job(args):
    langs, prefix, length, precision = args
    streams = [weights_by_prefix(f, length, prefix, precision) for f in langs]
    return [tuple(wt for _, wt in row) for row in zip(*streams)]


def iter_weights(
    langs: Sequence[WeightedLanguage],
    max_len: Optional[int] = None,
    workers: int = 1,
    precision: int = DEFAULT_PRECISION,
) -> Iterator[Tuple[Word, tuple]]:
    """Yield ``(word, (f1(word), f2(word), ...))`` in shortlex order of the first alphabet."""
    _check_alphabets(langs)
    symbols = langs[0].alphabet.symbols
    lengths = itertools.count() if max_len is None else range(max_len + 1)
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for n in lengths:
            if pool is None or len(symbols) ** n < _PARALLEL_MIN_LEVEL:
                streams = [weights_by_prefix(f, n, precision=precision) for f in langs]
                for row in zip(*streams):
                    yield row[0][0], tuple(wt for _, wt in row)
                continue
            d = 1
            while len(symbols) ** d < 4 * workers and d < n:
                d += 1
            prefixes = list(itertools.product(symbols, repeat=d))
            jobs = [(tuple(langs), p, n, precision) for p in prefixes]
            for prefix, chunk in zip(prefixes, pool.map(_chunk_job, jobs)):
                suffixes = itertools.product(symbols, repeat=n - d)
                for suffix, weights in zip(suffixes, chunk):
                    yield prefix + suffix, weights
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


def _certify(test: Callable[[tuple], bool], langs, words, values, precision, max_precision):
    """Run ``test`` on the weights, re-evaluating at doubled precision while it is undecidable."""
    prec = precision
    while True:
        try:
            return test(values)
        except ExactnessUnavailable:
            if prec >= max_precision:
                raise
            prec *= 2
            values = tuple(f.weight(w, prec) for f, w in zip(langs, words))


@dataclass(frozen=True)
class DistanceVerdict:
    outcome: str  # "yes" | "no" | "budget_exhausted"
    witness: Optional[Word]
    mass_f: object
    mass_g: object
    words_examined: int
    difference: object = None


def decide_tchebychev_gt(
    f: WeightedLanguage,
    g: WeightedLanguage,
    c: Fraction,
    budget: Optional[int] = None,
    workers: int = 1,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_PRECISION,
) -> DistanceVerdict:
    """Is there a word with |f(w) - g(w)| > c?

    Enumerate until a witness appears (yes) or both running masses reach 1 - c (no):
    past that point every remaining word weighs at most c under both languages.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("threshold c must be positive")
    if not (f.declared_consistent and g.declared_consistent):
        raise ValueError("both languages must be declared consistent")
    if type(f) is type(g) and f == g:
        # identical parameters: the difference is 0 on every word
        return DistanceVerdict("no", None, None, None, 0, Fraction(0))
    mass_f = mass_g = Fraction(0)
    examined = 0
    for w, (a, b) in iter_weights((f, g), None, workers, precision):
        if budget is not None and examined >= budget:
            return DistanceVerdict("budget_exhausted", None, mass_f, mass_g, examined)
        examined += 1
        mass_f, mass_g = a + mass_f, b + mass_g
        for name, m in (("f", mass_f), ("g", mass_g)):
            if lower_bound(m) > 1:
                raise InconsistencyDetected(f"mass of {name} exceeds 1 after {examined} words: {m}")
        hit = _certify(lambda v: definitely_gt(abs(v[0] - v[1]), c), (f, g), (w, w), (a, b),
                       precision, max_precision)
        if hit:
            return DistanceVerdict("yes", w, mass_f, mass_g, examined, abs(a - b))
        if lower_bound(mass_f) >= 1 - c and lower_bound(mass_g) >= 1 - c:
            return DistanceVerdict("no", None, mass_f, mass_g, examined)
    raise AssertionError("unbounded enumeration ended")  # pragma: no cover


@dataclass(frozen=True)
class FiniteDistanceReport:
    distance: object
    argmax: Word
    support_bound: int


def finite_support_distance(
    f: WeightedLanguage, g: WeightedLanguage, N: int, workers: int = 1,
    precision: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION,
) -> FiniteDistanceReport:
    """max over |w| <= N of |f(w) - g(w)|; the shortlex-first maximiser wins ties."""
    best = best_word = best_pair = None
    for w, (a, b) in iter_weights((f, g), N, workers, precision):
        diff = abs(a - b)
        if best is None:
            better = True
        elif isinstance(diff, Fraction) and isinstance(best, Fraction):
            better = diff > best
        else:
            better = _certify(
                lambda v: definitely_gt(abs(v[0] - v[1]), abs(v[2] - v[3])),
                (f, g, f, g), (w, w, best_word, best_word), (a, b) + best_pair,
                precision, max_precision,
            )
        if better:
            best, best_word, best_pair = diff, w, (a, b)
    return FiniteDistanceReport(best, best_word, N)


@dataclass(frozen=True)
class Equivalent:
    support_bound: int


@dataclass(frozen=True)
class Counterexample:
    word: Word
    f_weight: object
    g_weight: object


def eq_finite(
    f: WeightedLanguage, g: WeightedLanguage, m: int, workers: int = 1,
    precision: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION,
) -> Union[Equivalent, Counterexample]:
    """Compare f and g on every word of length <= m; report the first disagreement."""
    for w, (a, b) in iter_weights((f, g), m, workers, precision):
        same = _certify(lambda v: definitely_eq(v[0], v[1]), (f, g), (w, w), (a, b), precision, max_precision)
        if not same:
            return Counterexample(w, a, b)
    return Equivalent(m)


def bounded_consensus_search(
    f: WeightedLanguage, c: Fraction, max_len: int, workers: int = 1,
    precision: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION,
) -> Optional[Word]:
    """First word (shortlex) of length <= max_len with f(w) > c; only a semi-procedure in general."""
    c = Fraction(c)
    for w, (a,) in iter_weights((f,), max_len, workers, precision):
        if _certify(lambda v: definitely_gt(v[0], c), (f,), (w,), (a,), precision, max_precision):
            return w
    return None


def bounded_cutpoint_intersection(
    f: WeightedLanguage, c: Fraction, D: Dfa, max_len: int, workers: int = 1,
    precision: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION,
) -> Optional[Word]:
    """First word of length <= max_len accepted by D with f(w) >= c (cut-point membership)."""
    c = Fraction(c)
    if set(D.alphabet.symbols) != set(f.alphabet.symbols):
        raise ValueError("DFA and language use different alphabets")
    for w, (a,) in iter_weights((f,), max_len, workers, precision):
        if not dfa_accepts(D, w):
            continue
        if _certify(lambda v: definitely_ge(v[0], c), (f,), (w,), (a,), precision, max_precision):
            return w
    return None


def reduction_pair(F: CnfFormula, p: ReductionParams):
    return build_toy_rnn(p), build_reduction_pfa(F, p)


def sat_via_distance(F: CnfFormula, p: ReductionParams = ReductionParams(), workers: int = 1) -> bool:
    """Satisfiable iff the finite-support distance over lengths <= n+1 exceeds the threshold."""
    rnn, pfa = reduction_pair(F, p)
    report = finite_support_distance(rnn, pfa, F.num_vars + 1, workers)
    return report.distance > reduction_threshold(F, p)
