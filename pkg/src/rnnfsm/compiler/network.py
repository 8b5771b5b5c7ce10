"""Compile a two-stack machine into a ReLU RNN, plus the unary output gadget.

One machine step is spread over four recurrence steps (layers L0 -> L1 -> L2 -> L3 -> L0):

* L0 holds the configuration: stack values v1, v2 and a one-hot control vector.
* L1 copies it and reads the tops. Each saturated gate min(max(x, 0), 1) is
  written as relu(x) - relu(x - 1) over two units: nonempty_k = sat(4 v_k) and
  top1_k = sat(4 v_k - 2).
* L2 has one unit per (state, top1, top2) case, equal to 1 for the active case.
* L3 computes the next control vector and one gated candidate per stack action:
  relu(f(v) + 4 * selected - 4), where f(v) is push/pop/noop applied to v.

Only one layer carries data at a time; the others hold zeros, which the
circuit maps back to zeros. Unit 1 is a halting latch fed by the halting
indicators of all four layers, so it switches to 1 exactly at the boundary
where the machine halts and stays there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import Alphabet
from ..rnn import RnnLm
from .machines import TOPS, Config, TwoStackMachine
from .stacks import decode_stack, encode_stack

STEP_DILATION = 4
CANDIDATES = ("push0", "push1", "pop0", "pop1", "noop")


@dataclass(frozen=True)
class CompiledRnn:
    rnn: RnnLm
    halting_neuron: int
    stack_neurons: Tuple[int, int]
    step_dilation: int
    control_neurons: Dict[str, int]
    aux_neuron: Optional[int] = None

    def metadata(self) -> dict:
        return {
            "halting_neuron": self.halting_neuron,
            "stack_neurons": list(self.stack_neurons),
            "step_dilation": self.step_dilation,
            "control_neurons": dict(self.control_neurons),
            "aux_neuron": self.aux_neuron,
        }

    @classmethod
    def from_rnn(cls, rnn: RnnLm) -> "CompiledRnn":
        meta = rnn.metadata.get("compiled")
        if not meta:
            raise ValueError("RNN carries no compilation metadata")
        return cls(
            rnn, meta["halting_neuron"], tuple(meta["stack_neurons"]), meta["step_dilation"],
            dict(meta["control_neurons"]), meta.get("aux_neuron"),
        )


class _Builder:
    def __init__(self):
        self.names: List[str] = []
        self.rows: List[Dict[int, Fraction]] = []
        self.bias: List[Fraction] = []

    def unit(self, name: str) -> int:
        self.names.append(name)
        self.rows.append({})
        self.bias.append(Fraction(0))
        return len(self.names) - 1

    def feed(self, dst: int, terms: Dict[int, Fraction], const=0):
        row = self.rows[dst]
        for src, w in terms.items():
            row[src] = row.get(src, Fraction(0)) + Fraction(w)
        self.bias[dst] += Fraction(const)


def _candidate(action: str, top: str) -> str:
    if action == "pop":
        return "noop" if top == "e" else "pop" + top
    return action


def compile_two_stack(
    S: TwoStackMachine, input_bits: Optional[Sequence[int]] = None, alphabet: Optional[Alphabet] = None
) -> CompiledRnn:
    """Emit a ReLU RNN whose state at every 4th step encodes the machine configuration.

    ``input_bits`` (top first) replaces the machine's initial stack 1 when given.
    Every symbol of Sigma_$ gets the same embedding, which acts as the bias.
    """
    alphabet = alphabet or Alphabet(("a",))
    b = _Builder()
    v = {1: b.unit("v1"), "halt": b.unit("halt"), 2: b.unit("v2")}
    s0 = {q: b.unit(f"L0:{q}") for q in S.states}
    s1 = {q: b.unit(f"L1:{q}") for q in S.states}
    v1c = {k: b.unit(f"L1:v{k}") for k in (1, 2)}
    rd = {(k, c): b.unit(f"L1:read{k}:{c}") for k in (1, 2) for c in range(4)}
    cases = [(q, t1, t2) for q in S.states for t1 in TOPS for t2 in TOPS]
    g = {case: b.unit("L2:" + "|".join(case)) for case in cases}
    v2c = {k: b.unit(f"L2:v{k}") for k in (1, 2)}
    s3 = {q: b.unit(f"L3:{q}") for q in S.states}
    u = {(k, a): b.unit(f"L3:{a}{k}") for k in (1, 2) for a in CANDIDATES}

    # L0 <- L3
    for q in S.states:
        b.feed(s0[q], {s3[q]: 1})
    for k in (1, 2):
        b.feed(v[k], {u[k, a]: 1 for a in CANDIDATES})
    halt_terms = {}
    for q in S.halt:
        halt_terms.update({s0[q]: 1, s1[q]: 1, s3[q]: 1})
        halt_terms.update({g[q, t1, t2]: 1 for t1 in TOPS for t2 in TOPS})
    b.feed(v["halt"], halt_terms)

    # L1 <- L0: relu(4v - c) for c = 0..3
    for q in S.states:
        b.feed(s1[q], {s0[q]: 1})
    for k in (1, 2):
        b.feed(v1c[k], {v[k]: 1})
        for c in range(4):
            b.feed(rd[k, c], {v[k]: 4}, -c)

    # L2 <- L1: indicator(state) + indicator(top1) + indicator(top2) - 2
    def top_indicator(k, t):
        nonempty = ({rd[k, 0]: 1, rd[k, 1]: -1}, 0)
        one = ({rd[k, 2]: 1, rd[k, 3]: -1}, 0)
        if t == "1":
            return one
        if t == "0":
            return ({**nonempty[0], rd[k, 2]: -1, rd[k, 3]: 1}, 0)
        return ({rd[k, 0]: -1, rd[k, 1]: 1}, 1)

    for q, t1, t2 in cases:
        terms1, c1 = top_indicator(1, t1)
        terms2, c2 = top_indicator(2, t2)
        b.feed(g[q, t1, t2], {s1[q]: 1})
        b.feed(g[q, t1, t2], terms1, c1)
        b.feed(g[q, t1, t2], terms2, c2 - 2)
    for k in (1, 2):
        b.feed(v2c[k], {v1c[k]: 1})

    # L3 <- L2
    selected = {key: {} for key in u}
    for q, t1, t2 in cases:
        if q in S.halt:
            nxt, a1, a2 = q, "noop", "noop"
        else:
            nxt, a1, a2 = S.delta[q, t1, t2]
        b.feed(s3[nxt], {g[q, t1, t2]: 1})
        selected[1, _candidate(a1, t1)][g[q, t1, t2]] = 4
        selected[2, _candidate(a2, t2)][g[q, t1, t2]] = 4
    effect = {
        "push0": (Fraction(1, 4), Fraction(1, 4)),
        "push1": (Fraction(1, 4), Fraction(3, 4)),
        "pop0": (Fraction(4), Fraction(-1)),
        "pop1": (Fraction(4), Fraction(-3)),
        "noop": (Fraction(1), Fraction(0)),
    }
    for (k, a), unit in u.items():
        scale, shift = effect[a]
        b.feed(unit, {v2c[k]: scale, **selected[k, a]}, shift - 4)

    n = len(b.names)
    W = tuple(tuple(row.get(j, Fraction(0)) for j in range(n)) for row in b.rows)
    cfg = S.initial_config(input_bits)
    h0 = [Fraction(0)] * n
    h0[v[1]] = encode_stack(cfg.stack1)
    h0[v[2]] = encode_stack(cfg.stack2)
    h0[s0[S.start]] = Fraction(1)
    h0[v["halt"]] = Fraction(int(S.start in S.halt))
    bias = tuple(b.bias)
    outs = len(alphabet.with_end)
    zeros = (Fraction(0),) * n
    compiled = dict(
        halting_neuron=v["halt"], stack_neurons=(v[1], v[2]), step_dilation=STEP_DILATION,
        control_neurons=s0,
    )
    meta = {"compiled": {**compiled, "stack_neurons": [v[1], v[2]], "aux_neuron": None},
            "unit_names": list(b.names)}
    rnn = RnnLm(
        alphabet, n, tuple(h0), W, {s: bias for s in alphabet.with_end},
        (zeros,) * outs, (Fraction(0),) * outs, "relu", metadata=meta,
    )
    return CompiledRnn(rnn, **compiled)


def attach_output_gadget(C: CompiledRnn) -> RnnLm:
    """Add unit n' (starts at 0, relu self-loop) and read logits: a <- halting unit, $ <- n'.

    Before halting both logits are 0, so R'(a^n) = 1/2^(n+1); once the halting unit
    is 1 the next-symbol distribution becomes (2/3, 1/3).
    """
    R = C.rnn
    if len(R.alphabet) != 1:
        raise ValueError("the output gadget needs a unary alphabet")
    n = R.hidden_dim
    aux = n
    W = tuple(row + (Fraction(0),) for row in R.W) + (tuple(Fraction(int(j == aux)) for j in range(n + 1)),)
    emb = {s: vec + (Fraction(0),) for s, vec in R.embeddings.items()}
    O_a = tuple(Fraction(int(j == C.halting_neuron)) for j in range(n + 1))
    O_end = tuple(Fraction(int(j == aux)) for j in range(n + 1))
    meta = dict(R.metadata)
    meta["compiled"] = {**C.metadata(), "aux_neuron": aux}
    meta["unit_names"] = list(R.metadata.get("unit_names", [])) + ["aux"]
    return RnnLm(
        R.alphabet, n + 1, R.h0 + (Fraction(0),), W, emb, (O_a, O_end),
        (Fraction(0), Fraction(0)), "relu", metadata=meta,
    )


@dataclass(frozen=True)
class TraceEntry:
    boundary: int
    halt_value: Fraction
    stack_values: Tuple[Fraction, Fraction]
    config: Optional[Config] = field(default=None)


def decode_config(C: CompiledRnn, h: Sequence[Fraction]) -> Optional[Config]:
    """Configuration held in L0, or None if the control units are not one-hot."""
    active = [q for q, i in C.control_neurons.items() if h[i] != 0]
    if len(active) != 1 or h[C.control_neurons[active[0]]] != 1:
        return None
    try:
        s1, s2 = (decode_stack(h[i]) for i in C.stack_neurons)
    except ValueError:
        return None
    return Config(active[0], s1, s2)


def simulate(C: CompiledRnn, boundaries: int, symbol: Optional[str] = None) -> List[TraceEntry]:
    """Run ``step_dilation * boundaries`` recurrence steps feeding one symbol; report every boundary."""
    R = C.rnn
    symbol = symbol or R.alphabet.symbols[0]
    h = R.h0
    trace = []
    for m in range(boundaries + 1):
        trace.append(TraceEntry(
            m, h[C.halting_neuron], tuple(h[i] for i in C.stack_neurons), decode_config(C, h)
        ))
        if m == boundaries:
            break
        for _ in range(C.step_dilation):
            h = R.step(h, symbol).hidden
    return trace
