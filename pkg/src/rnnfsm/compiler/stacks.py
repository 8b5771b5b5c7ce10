"""Base-4 stack encodings.

A binary stack ``bits`` (``bits[0]`` is the top) is stored as the rational
sum((2*b_i + 1) / 4**i). Digits 1 and 3 keep the map injective and make the top
readable by thresholds: empty -> 0, top 0 -> [1/4, 1/2), top 1 -> [3/4, 1).

The literal digit map sum(b_i / 4**i) is kept for comparison only; it sends
"1" and "10" to the same value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

Bits = Tuple[int, ...]


def _bits(bits) -> Bits:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"stack symbols must be 0/1, got {bits!r}")
    return out


def encode_stack(bits: Sequence[int]) -> Fraction:
    bits = _bits(bits)
    num = 0
    for b in bits:
        num = 4 * num + 2 * b + 1
    return Fraction(num, 4 ** len(bits))


def decode_stack(r: Fraction) -> Bits:
    r = Fraction(r)
    num, den = r.numerator, r.denominator
    length, rem = divmod(den.bit_length() - 1, 2)
    if not (0 <= r < 1) or den & (den - 1) or rem:
        raise ValueError(f"{r} is not a stack codeword")
    out = []
    for i in range(length - 1, -1, -1):
        digit = (num >> (2 * i)) & 3
        if digit not in (1, 3):
            raise ValueError(f"{r} is not a stack codeword (base-4 digit {digit})")
        out.append(digit >> 1)
    return tuple(out)


def stack_top(r: Fraction) -> Optional[int]:
    if r >= Fraction(3, 4):
        return 1
    if r >= Fraction(1, 4):
        return 0
    return None


def stack_push(r: Fraction, b: int) -> Fraction:
    return r / 4 + Fraction(2 * b + 1, 4)


def stack_pop(r: Fraction) -> Fraction:
    top = stack_top(r)
    return r if top is None else 4 * r - (2 * top + 1)


def encode_stack_literal(bits: Sequence[int]) -> Fraction:
    """sum(b_i / 4**i). Not injective: trailing zeros vanish."""
    return sum((Fraction(b, 4 ** i) for i, b in enumerate(_bits(bits), 1)), Fraction(0))


def _no_decode(r):
    raise ValueError("the literal base-4 codec is not injective and has no decoder")


@dataclass(frozen=True)
class StackCodec:
    name: str
    encode: Callable[[Sequence[int]], Fraction]
    decode: Callable[[Fraction], Bits]
    injective: bool


DIGIT_CODEC = StackCodec("digits-1-3", encode_stack, decode_stack, injective=True)
LITERAL_CODEC = StackCodec("literal-0-1", encode_stack_literal, _no_decode, injective=False)
