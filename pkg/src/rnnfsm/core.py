"""Exact rationals, alphabets, words, shortlex enumeration and the weighted-language base class."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional, Sequence, Union

Rational = Fraction
Word = tuple  # tuple[str, ...]; the end marker is never stored

END = "$"


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal notation is refused on purpose."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"rationals must be written as p/q, got {text!r}")
    num, _, den = s.partition("/")
    try:
        return Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    end_marker: str = END

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols}")
        if self.end_marker in self.symbols:
            raise ValueError(f"end marker {self.end_marker!r} cannot be an input symbol")

    @property
    def with_end(self) -> tuple:
        """Sigma_$ in output order: input symbols first, end marker last."""
        return self.symbols + (self.end_marker,)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, sym) -> bool:
        return sym in self.symbols

    def index(self, sym: str) -> int:
        return self.with_end.index(sym)

    def word(self, text: Union[str, Sequence[str]]) -> Word:
        """Build a word from ``"0110"`` (single-character alphabets) or a sequence of symbols."""
        if isinstance(text, str):
            if all(len(s) == 1 for s in self.symbols):
                parts = tuple(text)
            else:
                parts = tuple(text.replace(",", " ").split())
        else:
            parts = tuple(str(s) for s in text)
        self.check(parts)
        return parts

    def check(self, w: Iterable[str]) -> None:
        for sym in w:
            if sym not in self.symbols:
                raise ValueError(f"symbol {sym!r} not in alphabet {list(self.symbols)}")

    def show(self, w: Word) -> str:
        sep = "" if all(len(s) == 1 for s in self.symbols) else " "
        return sep.join(w)


def shortlex_enumerate(alphabet: Alphabet, max_len: Optional[int] = None) -> Iterator[Word]:
    """Every word by length, then lexicographically in the alphabet's declared order."""
    lengths = itertools.count() if max_len is None else range(max_len + 1)
    for n in lengths:
        yield from itertools.product(alphabet.symbols, repeat=n)


def shortlex_key(alphabet: Alphabet, w: Word) -> tuple:
    return (len(w), tuple(alphabet.symbols.index(s) for s in w))


class WeightedLanguage:
    """A map from words to exact weights (Fraction) or certified enclosures (Interval).

    Subclasses implement :meth:`weight`. The prefix API (``start``/``advance``/``finish``)
    lets enumeration share work between words with a common prefix; the default just
    accumulates the word and calls :meth:`weight`.
    """

    alphabet: Alphabet
    declared_consistent: bool = False

    def weight(self, w: Word, precision: int = 64) -> Any:
        raise NotImplementedError

    def start(self, precision: int = 64) -> Any:
        return ()

    def advance(self, state: Any, sym: str, precision: int = 64) -> Any:
        return state + (sym,)

    def finish(self, state: Any, precision: int = 64) -> Any:
        return self.weight(state, precision)

    def __call__(self, w: Union[str, Word]) -> Any:
        if isinstance(w, str):
            w = self.alphabet.word(w)
        return self.weight(w)


def weights_by_prefix(f: WeightedLanguage, words_of_len: int, prefix: Word = (), precision: int = 64):
    """Yield ``(word, weight)`` for all words of a given length extending ``prefix``, in lex order.

    Depth-first with an explicit stack, so memory stays linear in the word length.
    """
    state = f.start(precision)
    for sym in prefix:
        state = f.advance(state, sym, precision)
    if len(prefix) >= words_of_len:
        yield tuple(prefix), f.finish(state, precision)
        return
    syms = f.alphabet.symbols
    stack = [(tuple(prefix), state, iter(syms))]
    while stack:
        word, st, it = stack[-1]
        sym = next(it, None)
        if sym is None:
            stack.pop()
            continue
        child = word + (sym,)
        cst = f.advance(st, sym, precision)
        if len(child) == words_of_len:
            yield child, f.finish(cst, precision)
        else:
            stack.append((child, cst, iter(syms)))


def cumulative_mass(f: WeightedLanguage, max_len: int, precision: int = 64):
    """Sum of f(w) over all words of length <= max_len, exact when f is."""
    total = Fraction(0)
    for n in range(max_len + 1):
        for _, wt in weights_by_prefix(f, n, precision=precision):
            total = wt + total
    return total
