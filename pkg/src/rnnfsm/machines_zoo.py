"""Small two-stack machines with known behaviour, used by tests, scripts and ``verify``."""

from __future__ import annotations

from .compiler.machines import TwoStackMachine


def looper() -> TwoStackMachine:
    """One state, no halting state, does nothing forever."""
    return TwoStackMachine.from_rules(["loop"], "loop", set(), [("loop", "*", "*", "loop", "noop", "noop")])


def drain() -> TwoStackMachine:
    """Pop stack 1 until empty; halts after len(input) + 1 steps."""
    return TwoStackMachine.from_rules(["d", "h"], "d", {"h"}, [
        ("d", "e", "*", "h", "noop", "noop"),
        ("d", "*", "*", "d", "pop", "noop"),
    ])


def mover() -> TwoStackMachine:
    """Move stack 1 onto stack 2 bit by bit, then halt."""
    return TwoStackMachine.from_rules(["m", "h"], "m", {"h"}, [
        ("m", "e", "*", "h", "noop", "noop"),
        ("m", "0", "*", "m", "pop", "push0"),
        ("m", "1", "*", "m", "pop", "push1"),
    ])


def shuttle() -> TwoStackMachine:
    """Move stack 1 onto stack 2, then back again (restoring the input), then halt."""
    return TwoStackMachine.from_rules(["there", "back", "h"], "there", {"h"}, [
        ("there", "0", "*", "there", "pop", "push0"),
        ("there", "1", "*", "there", "pop", "push1"),
        ("there", "e", "*", "back", "noop", "noop"),
        ("back", "*", "0", "back", "push0", "pop"),
        ("back", "*", "1", "back", "push1", "pop"),
        ("back", "*", "e", "h", "noop", "noop"),
    ])


def parity_marker() -> TwoStackMachine:
    """Four states: consume stack 1 tracking parity of ones, push the parity bit on stack 2, halt."""
    return TwoStackMachine.from_rules(["even", "odd", "write", "h"], "even", {"h"}, [
        ("even", "1", "*", "odd", "pop", "noop"),
        ("even", "0", "*", "even", "pop", "noop"),
        ("even", "e", "*", "write", "noop", "push0"),
        ("odd", "1", "*", "even", "pop", "noop"),
        ("odd", "0", "*", "odd", "pop", "noop"),
        ("odd", "e", "*", "write", "noop", "push1"),
        ("write", "*", "*", "h", "push1", "noop"),
    ])


def push_pop() -> TwoStackMachine:
    """Push one bit onto stack 1, pop it again, halt at step 2."""
    return TwoStackMachine.from_rules(["push", "pop", "h"], "push", {"h"}, [
        ("push", "*", "*", "pop", "push1", "noop"),
        ("pop", "*", "*", "h", "pop", "noop"),
    ])


def halts_at(steps: int) -> tuple:
    """(machine, input) whose run halts at exactly ``steps`` (>= 1)."""
    return drain(), (1, 0) * ((steps - 1) // 2) + (1,) * ((steps - 1) % 2)


ZOO = {
    "looper": looper,
    "drain": drain,
    "mover": mover,
    "shuttle": shuttle,
    "parity_marker": parity_marker,
    "push_pop": push_pop,
}
