"""Exact evaluation and decision procedures for finite-state automata and ReLU RNN language models."""

from .automata import Dfa, PfaValidationReport, Violation, WeightedAutomaton, dfa_accepts, validate_pfa
from .core import END, Alphabet, WeightedLanguage, format_rational, parse_rational, shortlex_enumerate
from .decision import (
    Counterexample, DistanceVerdict, Equivalent, FiniteDistanceReport, InconsistencyDetected,
    bounded_consensus_search, bounded_cutpoint_intersection, decide_tchebychev_gt, eq_finite,
    finite_support_distance, sat_via_distance,
)
from .interval import ExactnessUnavailable, Interval
from .reduction import CnfFormula, ReductionParams, build_reduction_pfa, build_toy_rnn, parse_dimacs
from .rnn import RnnLm, softmax2

__all__ = [
    "END", "Alphabet", "WeightedLanguage", "format_rational", "parse_rational", "shortlex_enumerate",
    "Dfa", "PfaValidationReport", "Violation", "WeightedAutomaton", "dfa_accepts", "validate_pfa",
    "Counterexample", "DistanceVerdict", "Equivalent", "FiniteDistanceReport", "InconsistencyDetected",
    "bounded_consensus_search", "bounded_cutpoint_intersection", "decide_tchebychev_gt", "eq_finite",
    "finite_support_distance", "sat_via_distance",
    "ExactnessUnavailable", "Interval",
    "CnfFormula", "ReductionParams", "build_reduction_pfa", "build_toy_rnn", "parse_dimacs",
    "RnnLm", "softmax2",
]
