"""Two-stack machines, Turing machines, direct simulators and the TM -> two-stack conversion."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

TOPS = ("0", "1", "e")
ACTIONS = ("push0", "push1", "pop", "noop")


@dataclass(frozen=True)
class Config:
    state: str
    stack1: Tuple[int, ...]  # index 0 is the top
    stack2: Tuple[int, ...]


def top_of(stack: Sequence[int]) -> str:
    return str(stack[0]) if stack else "e"


def apply_action(stack: Tuple[int, ...], action: str) -> Tuple[int, ...]:
    if action == "push0":
        return (0,) + stack
    if action == "push1":
        return (1,) + stack
    if action == "pop":
        return stack[1:]  # popping an empty stack leaves it empty
    if action == "noop":
        return stack
    raise ValueError(f"unknown stack action {action!r}")


@dataclass(frozen=True)
class TwoStackMachine:
    """Deterministic control over two binary stacks.

    ``delta[(state, top1, top2)] = (next_state, action1, action2)`` with tops in
    {"0", "1", "e"}. Non-halting states must define all nine cases; halting
    states define none.
    """

    states: Tuple[str, ...]
    start: str
    halt: frozenset
    delta: Mapping
    initial_stack1: Tuple[int, ...] = ()
    initial_stack2: Tuple[int, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(str(s) for s in self.states))
        object.__setattr__(self, "halt", frozenset(self.halt))
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "initial_stack1", tuple(int(b) for b in self.initial_stack1))
        object.__setattr__(self, "initial_stack2", tuple(int(b) for b in self.initial_stack2))
        known = set(self.states)
        if len(known) != len(self.states):
            raise ValueError("duplicate state names")
        if self.start not in known or not self.halt <= known:
            raise ValueError("start/halt states must be declared")
        for (q, t1, t2), (r, a1, a2) in self.delta.items():
            if q not in known or r not in known:
                raise ValueError(f"transition uses unknown state: {(q, t1, t2)} -> {r}")
            if t1 not in TOPS or t2 not in TOPS or a1 not in ACTIONS or a2 not in ACTIONS:
                raise ValueError(f"bad transition {(q, t1, t2)} -> {(r, a1, a2)}")
            if q in self.halt:
                raise ValueError(f"halting state {q!r} has an outgoing transition")
        for q in self.states:
            if q in self.halt:
                continue
            missing = [(t1, t2) for t1 in TOPS for t2 in TOPS if (q, t1, t2) not in self.delta]
            if missing:
                raise ValueError(f"state {q!r} has no transition for tops {missing}")

    @classmethod
    def from_rules(cls, states, start, halt, rules: Iterable, **kw) -> "TwoStackMachine":
        """Build from ``(state, top1, top2, next, action1, action2)`` rows; ``*`` matches any top.

        Earlier rows win, so specific cases go before wildcards.
        """
        delta = {}
        for q, t1, t2, r, a1, a2 in rules:
            for x in TOPS if t1 == "*" else (t1,):
                for y in TOPS if t2 == "*" else (t2,):
                    delta.setdefault((q, x, y), (r, a1, a2))
        return cls(tuple(states), start, frozenset(halt), delta, **kw)

    @property
    def size(self) -> int:
        return len(self.states)

    def initial_config(self, input_bits: Optional[Sequence[int]] = None) -> Config:
        s1 = self.initial_stack1 if input_bits is None else tuple(int(b) for b in input_bits)
        return Config(self.start, s1, self.initial_stack2)

    def step(self, c: Config) -> Config:
        if c.state in self.halt:
            return c
        nxt, a1, a2 = self.delta[c.state, top_of(c.stack1), top_of(c.stack2)]
        return Config(nxt, apply_action(c.stack1, a1), apply_action(c.stack2, a2))

    def run(self, input_bits=None, max_steps: int = 1000) -> List[Config]:
        """Configurations after 0, 1, ..., max_steps steps (halted ones repeat)."""
        c = self.initial_config(input_bits)
        trace = [c]
        for _ in range(max_steps):
            c = self.step(c)
            trace.append(c)
        return trace

    def halting_step(self, input_bits=None, max_steps: int = 1000) -> Optional[int]:
        c = self.initial_config(input_bits)
        for t in range(max_steps + 1):
            if c.state in self.halt:
                return t
            c = self.step(c)
        return None


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic single-tape TM; ``delta[(state, read)] = (next, write, "L"|"R")``.

    A non-halting state with no rule for the symbol under the head halts in place.
    """

    states: Tuple[str, ...]
    tape_alphabet: Tuple[str, ...]
    blank: str
    delta: Mapping
    start: str
    halt: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(str(s) for s in self.states))
        object.__setattr__(self, "tape_alphabet", tuple(str(s) for s in self.tape_alphabet))
        object.__setattr__(self, "halt", frozenset(self.halt))
        object.__setattr__(self, "delta", dict(self.delta))
        if self.blank not in self.tape_alphabet:
            raise ValueError("blank must belong to the tape alphabet")
        if self.start not in self.states or not self.halt <= set(self.states):
            raise ValueError("start/halt states must be declared")
        for (q, a), (r, b, d) in self.delta.items():
            if q in self.halt:
                raise ValueError(f"halting state {q!r} has an outgoing transition")
            if q not in self.states or r not in self.states:
                raise ValueError(f"unknown state in rule {(q, a)}")
            if a not in self.tape_alphabet or b not in self.tape_alphabet or d not in ("L", "R"):
                raise ValueError(f"bad rule {(q, a)} -> {(r, b, d)}")

    def run(self, tape_input: Sequence[str], max_steps: int = 10_000):
        """Return ``(halted, steps, tape, head)`` with the tape trimmed of outer blanks."""
        tape = dict(enumerate(tape_input))
        q, head = self.start, 0
        for steps in range(max_steps + 1):
            rule = None if q in self.halt else self.delta.get((q, tape.get(head, self.blank)))
            if rule is None:
                return True, steps, _trim(tape, self.blank), head
            if steps == max_steps:
                break
            q, tape[head], move = rule
            head += 1 if move == "R" else -1
        return False, max_steps, _trim(tape, self.blank), head


def _trim(tape: Dict[int, str], blank: str) -> Tuple[str, ...]:
    cells = [i for i, s in tape.items() if s != blank]
    if not cells:
        return ()
    return tuple(tape.get(i, blank) for i in range(min(cells), max(cells) + 1))


def symbol_codes(M: TuringMachine) -> Tuple[int, Dict[str, Tuple[int, ...]]]:
    """Fixed-width binary codes for the tape alphabet; blank gets all zeros."""
    symbols = [M.blank] + [s for s in M.tape_alphabet if s != M.blank]
    width = max(1, math.ceil(math.log2(len(symbols))))
    codes = {s: tuple(int(b) for b in format(i, f"0{width}b")) for i, s in enumerate(symbols)}
    return width, codes


def tm_to_two_stack(M: TuringMachine, tape_input: Sequence[str]) -> TwoStackMachine:
    """Stack 1 holds the head cell (on top) and everything left of it; stack 2 the cells to the right.

    Each tape symbol is a block of ``width`` bits. In stack 1 a block pops as
    b_1..b_w, in stack 2 as b_w..b_1, so moving a block across reverses it back.
    The block width and code table are recorded in ``meta``.
    """
    width, codes = symbol_codes(M)
    decode = {v: k for k, v in codes.items()}
    for s in tape_input:
        if s not in codes:
            raise ValueError(f"input symbol {s!r} not in tape alphabet")
    blank = codes[M.blank]
    halt = ("halt",)

    def push_chain(k, bits, cont):
        return ("push", k, tuple(bits), cont)

    def rules(state):
        kind = state[0]
        out = {}
        for t1, t2 in itertools.product(TOPS, TOPS):
            if kind == "read":
                _, q, p = state
                if q in M.halt:
                    out[t1, t2] = (halt, "noop", "noop")
                elif not p and t1 == "e":
                    out[t1, t2] = (("act", q, M.blank), "noop", "noop")
                elif t1 == "e":
                    out[t1, t2] = (halt, "noop", "noop")  # unreachable: blocks are whole
                else:
                    p2 = p + (int(t1),)
                    if len(p2) < width:
                        nxt = ("read", q, p2)
                    else:
                        nxt = ("act", q, decode[p2]) if p2 in decode else halt  # unused code: unreachable
                    out[t1, t2] = (nxt, "pop", "noop")
            elif kind == "act":
                _, q, s = state
                rule = M.delta.get((q, s))
                if rule is None:
                    nxt = push_chain(1, reversed(codes[s]), halt)
                else:
                    q2, s2, d = rule
                    if d == "R":
                        nxt = push_chain(1, reversed(codes[s2]), ("move_r", q2, width))
                    else:
                        nxt = push_chain(2, codes[s2], ("read", q2, ()))
                out[t1, t2] = (nxt, "noop", "noop")
            elif kind == "move_r":
                _, q, j = state
                after = ("read", q, ())
                if t2 == "e" and j == width:
                    out[t1, t2] = (push_chain(1, reversed(blank), after), "noop", "noop")
                elif t2 == "e":
                    out[t1, t2] = (halt, "noop", "noop")  # unreachable
                else:
                    nxt = ("move_r", q, j - 1) if j > 1 else after
                    out[t1, t2] = (nxt, "push" + t2, "pop")
            elif kind == "push":
                _, k, bits, cont = state
                nxt = cont if len(bits) == 1 else ("push", k, bits[1:], cont)
                act = f"push{bits[0]}"
                out[t1, t2] = (nxt, act, "noop") if k == 1 else (nxt, "noop", act)
        return out

    start = ("read", M.start, ())
    names: Dict[tuple, str] = {}
    table = {}
    queue = deque([start, halt])
    while queue:
        st = queue.popleft()
        if st in names:
            continue
        names[st] = _state_name(st)
        if st == halt:
            continue
        table[st] = rules(st)
        for nxt, _, _ in table[st].values():
            if nxt not in names:
                queue.append(nxt)
    delta = {
        (names[st], t1, t2): (names[nxt], a1, a2)
        for st, row in table.items()
        for (t1, t2), (nxt, a1, a2) in row.items()
    }
    stack1 = codes[tape_input[0]] if tape_input else ()
    stack2 = tuple(b for s in tape_input[1:] for b in reversed(codes[s]))
    return TwoStackMachine(
        tuple(names.values()), names[start], frozenset({names[halt]}), delta,
        initial_stack1=stack1, initial_stack2=stack2,
        meta={"block_width": width, "codes": {s: "".join(map(str, c)) for s, c in codes.items()},
              "blank": M.blank},
    )


def _state_name(st: tuple) -> str:
    def part(x):
        if isinstance(x, tuple):
            return "(" + ",".join(part(y) for y in x) + ")"
        return str(x)
    return ":".join(part(x) for x in st)


def tape_from_stacks(S: TwoStackMachine, c: Config) -> Tuple[str, ...]:
    """Read the TM tape back out of a converted machine's configuration (outer blanks trimmed)."""
    width = S.meta["block_width"]
    decode = {tuple(int(b) for b in v): k for k, v in S.meta["codes"].items()}
    blank = S.meta["blank"]
    left = [decode[c.stack1[i:i + width]] for i in range(0, len(c.stack1), width)]
    right = [decode[tuple(reversed(c.stack2[i:i + width]))] for i in range(0, len(c.stack2), width)]
    head_and_left = left if left else [blank]
    cells = list(reversed(head_and_left)) + right
    while cells and cells[0] == blank:
        cells.pop(0)
    while cells and cells[-1] == blank:
        cells.pop()
    return tuple(cells)
