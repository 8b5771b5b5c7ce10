"""First-order weighted RNN language models with a base-2 softmax head."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from .core import Alphabet, WeightedLanguage, Word, cumulative_mass
from .interval import pow2

Vector = Tuple[Fraction, ...]


def relu(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


def saturated_linear(x: Fraction) -> Fraction:
    return min(max(x, Fraction(0)), Fraction(1))


ACTIVATIONS: Dict[str, Callable[[Fraction], Fraction]] = {
    "relu": relu,
    "saturated_linear": saturated_linear,
}


@lru_cache(maxsize=4096)
def _softmax2_cached(logits: Vector, precision: int):
    if all(x.denominator == 1 for x in logits):
        lo = min(logits)
        powers = [1 << int(x - lo) for x in logits]
        total = sum(powers)
        return tuple(Fraction(p, total) for p in powers)
    out = []
    for xi in logits:
        # 1 / sum_j 2^(x_j - x_i): every term with an integer gap stays exact
        denom = sum((pow2(xj - xi, precision) for xj in logits), Fraction(0))
        out.append(1 / denom)
    return tuple(out)


def softmax2(logits: Sequence, precision: int = 64):
    """2^x_i / sum_j 2^x_j. Exact for integer logits, Interval entries otherwise."""
    if not logits:
        raise ValueError("softmax2 of an empty vector")
    logits = tuple(x if type(x) is Fraction else Fraction(x) for x in logits)
    return _softmax2_cached(logits, precision)


_MEMO_LIMIT = 1 << 14


@dataclass(frozen=True)
class StepOutput:
    hidden: Vector
    logits: Vector
    distribution: tuple


@dataclass(frozen=True)
class RnnLm(WeightedLanguage):
    """R = <Sigma, N, h0, sigma, W, W'_s, O, O'>.

    Rows of ``O`` and entries of ``O_bias`` follow ``alphabet.with_end`` (input
    symbols, then the end marker).
    """

    alphabet: Alphabet
    hidden_dim: int
    h0: Vector
    W: Tuple[Vector, ...]
    embeddings: Dict[str, Vector]
    O: Tuple[Vector, ...]
    O_bias: Vector
    activation: Union[str, Callable[[Fraction], Fraction]] = "relu"
    declared_consistent: bool = False
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        fr = lambda v: tuple(Fraction(x) for x in v)
        object.__setattr__(self, "h0", fr(self.h0))
        object.__setattr__(self, "W", tuple(fr(r) for r in self.W))
        object.__setattr__(self, "embeddings", {s: fr(v) for s, v in self.embeddings.items()})
        object.__setattr__(self, "O", tuple(fr(r) for r in self.O))
        object.__setattr__(self, "O_bias", fr(self.O_bias))
        n, outs = self.hidden_dim, len(self.alphabet.with_end)
        if len(self.h0) != n or len(self.W) != n or any(len(r) != n for r in self.W):
            raise ValueError("h0 / W dimensions disagree with hidden_dim")
        if set(self.embeddings) != set(self.alphabet.with_end):
            raise ValueError("need exactly one embedding per symbol of Sigma_$")
        if any(len(v) != n for v in self.embeddings.values()):
            raise ValueError("embedding length must equal hidden_dim")
        if len(self.O) != outs or any(len(r) != n for r in self.O) or len(self.O_bias) != outs:
            raise ValueError("O must be |Sigma_$| x N and O' length |Sigma_$|")
        if isinstance(self.activation, str) and self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")

    @cached_property
    def sigma(self) -> Callable[[Fraction], Fraction]:
        return ACTIVATIONS[self.activation] if isinstance(self.activation, str) else self.activation

    @cached_property
    def _W_rows(self):
        return tuple(tuple((j, w) for j, w in enumerate(row) if w) for row in self.W)

    @cached_property
    def _O_rows(self):
        return tuple(tuple((j, w) for j, w in enumerate(row) if w) for row in self.O)

    @cached_property
    def _memo(self) -> dict:
        return {}

    def step(self, h: Sequence[Fraction], sym: str, precision: int = 64) -> StepOutput:
        key = (tuple(h), sym, precision)
        out = self._memo.get(key)
        if out is None:
            out = self._step(key[0], sym, precision)
            if len(self._memo) >= _MEMO_LIMIT:
                self._memo.clear()
            self._memo[key] = out
        return out

    def _step(self, h: Vector, sym: str, precision: int) -> StepOutput:
        if len(h) != self.hidden_dim:
            raise ValueError("hidden vector has wrong length")
        if sym not in self.embeddings:
            raise ValueError(f"symbol {sym!r} not in Sigma_$")
        emb, act = self.embeddings[sym], self.sigma
        hidden = []
        for row, b in zip(self._W_rows, emb):
            pre = b
            for j, w in row:
                if h[j]:
                    pre = pre + (h[j] if w == 1 else w * h[j])
            val = act(pre)
            if not isinstance(val, Fraction):
                raise TypeError("activation must map rationals to rationals")
            hidden.append(val)
        hidden = tuple(hidden)
        logits = tuple(
            sum((w * hidden[j] for j, w in row if hidden[j]), b) for row, b in zip(self._O_rows, self.O_bias)
        )
        return StepOutput(hidden, logits, softmax2(logits, precision))

    # prefix API: state = (hidden after last input, product so far, next-symbol distribution)

    def start(self, precision: int = 64):
        out = self.step(self.h0, self.alphabet.end_marker, precision)
        return out.hidden, Fraction(1), out.distribution

    def advance(self, state, sym, precision: int = 64):
        hidden, prob, dist = state
        out = self.step(hidden, sym, precision)
        return out.hidden, dist[self.alphabet.index(sym)] * prob, out.distribution

    def finish(self, state, precision: int = 64):
        _, prob, dist = state
        return dist[-1] * prob

    def weight(self, w: Word, precision: int = 64):
        self.alphabet.check(w)
        state = self.start(precision)
        for sym in w:
            state = self.advance(state, sym, precision)
        return self.finish(state, precision)


def rnn_step(R: RnnLm, h: Sequence[Fraction], input_symbol: str, precision: int = 64) -> StepOutput:
    return R.step(h, input_symbol, precision)


def rnn_weight(R: RnnLm, w: Word, precision: int = 64):
    """Product over t = 1..|w|+1 of E'_t[w_t]; step t reads w_(t-1) with w_0 = w_(|w|+1) = $."""
    return R.weight(tuple(w), precision)


def rnn_mass_upto(R: RnnLm, L: int, precision: int = 64):
    return cumulative_mass(R, L, precision)


def zero_rnn(alphabet: Alphabet, hidden_dim: int = 1) -> RnnLm:
    zeros = (Fraction(0),) * hidden_dim
    outs = len(alphabet.with_end)
    return RnnLm(
        alphabet, hidden_dim, zeros, (zeros,) * hidden_dim,
        {s: zeros for s in alphabet.with_end}, (zeros,) * outs, (Fraction(0),) * outs,
    )
