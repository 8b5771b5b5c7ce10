from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rnnfsm.automata import build_trivial_unary_dpfa
from rnnfsm.core import (
    Alphabet, cumulative_mass, format_rational, parse_rational, shortlex_enumerate, shortlex_key,
    weights_by_prefix,
)
from rnnfsm.reduction import ReductionParams, build_toy_rnn

BIN = Alphabet(("0", "1"))


@pytest.mark.parametrize("text, value", [("1/8", Fraction(1, 8)), ("-3/6", Fraction(-1, 2)), ("7", Fraction(7)),
                                         (" 2/4 ", Fraction(1, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "", "1/0", "a/b", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_rational_text_round_trip(r):
    assert parse_rational(format_rational(r)) == r


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("a", "$"))
    assert BIN.with_end == ("0", "1", "$")
    assert BIN.word("0110") == ("0", "1", "1", "0")
    with pytest.raises(ValueError):
        BIN.word("012")


def test_multichar_alphabet_words():
    A = Alphabet(("ab", "c"))
    assert A.word("ab c ab") == ("ab", "c", "ab")
    assert A.show(("ab", "c")) == "ab c"


def test_shortlex_examples():
    assert list(shortlex_enumerate(BIN, 1)) == [(), ("0",), ("1",)]
    assert [''.join(w) for w in shortlex_enumerate(Alphabet(("a",)), 3)] == ["", "a", "aa", "aaa"]
    words = list(shortlex_enumerate(BIN, 2))
    assert len(words) == 7 and words[-1] == ("1", "1")


@given(st.integers(1, 3), st.integers(0, 5))
def test_shortlex_count_and_order(size, L):
    A = Alphabet(tuple("abc"[:size]))
    words = list(shortlex_enumerate(A, L))
    assert len(words) == sum(size ** i for i in range(L + 1))
    assert len(set(words)) == len(words)
    keys = [shortlex_key(A, w) for w in words]
    assert keys == sorted(keys)


def test_shortlex_respects_declared_order():
    A = Alphabet(("1", "0"))
    assert list(shortlex_enumerate(A, 1)) == [(), ("1",), ("0",)]


def test_cumulative_mass_examples():
    assert cumulative_mass(build_trivial_unary_dpfa(), 2) == Fraction(7, 8)
    assert cumulative_mass(build_toy_rnn(ReductionParams()), 0) == Fraction(1, 5)


def test_cumulative_mass_monotone_and_bounded():
    R = build_toy_rnn(ReductionParams())
    masses = [cumulative_mass(R, L) for L in range(7)]
    assert masses == sorted(masses) and masses[-1] <= 1


def test_weights_by_prefix_matches_direct_weights():
    R = build_toy_rnn(ReductionParams())
    got = list(weights_by_prefix(R, 3))
    assert [w for w, _ in got] == list(shortlex_enumerate(BIN, 3))[7:]
    assert all(v == R.weight(w) for w, v in got)
    # restricting to a prefix only yields extensions of it
    sub = list(weights_by_prefix(R, 3, prefix=("1",)))
    assert [w for w, _ in sub] == [w for w, _ in got if w[0] == "1"]


def test_language_call_accepts_text():
    A = build_trivial_unary_dpfa()
    assert A("aa") == A.weight(("a", "a")) == Fraction(1, 8)
