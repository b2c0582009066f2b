"""Promise problems on bit strings and the classical algorithms attached to them.

Two problems live here.  The outer problem takes an even-length string that is
promised to have Hamming weight 0 ("constant") or exactly half ("balanced")
and answers 1 in the constant case.  The inner problem takes a pair of
m-bit halves, exactly one of which is all-zero while the other carries weight
at least m/2, and answers 1 when the *left* half is the zero one.

The inner problem has a natural zero-error algorithm: repeatedly pick a fresh
position j at random and query both halves at j; the first 1 seen settles the
answer.  Its stopping distribution is what the composition experiments feed
on, so exact enumeration helpers for it are provided alongside.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    BadArity,
    BadParameter,
    BadRepetitionCount,
    ParseError,
    PromiseViolation,
)


def _check_bits(bits: str, what: str) -> None:
    if not isinstance(bits, str) or bits == "" or bits.strip("01") != "":
        raise ValueError(f"{what} must be a nonempty string of 0s and 1s")


@dataclass(frozen=True)
class GInput:
    """Even-length bit string with weight 0 or exactly half."""

    bits: str

    def __post_init__(self):
        _check_bits(self.bits, "bits")
        m = len(self.bits)
        weight = self.bits.count("1")
        if m % 2:
            raise PromiseViolation(f"input length must be even, got {m}")
        if weight not in (0, m // 2):
            raise PromiseViolation(
                f"weight {weight} of an m={m} input is not in {{0, m/2}}")

    @property
    def m(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return self.bits.count("1")


@dataclass(frozen=True)
class HInput:
    """Two m-bit halves; exactly one is all-zero, the other has weight >= m/2."""

    left: str
    right: str

    def __post_init__(self):
        _check_bits(self.left, "left")
        _check_bits(self.right, "right")
        if len(self.left) != len(self.right):
            raise PromiseViolation("halves must have equal length")
        left_zero = "1" not in self.left
        right_zero = "1" not in self.right
        if left_zero == right_zero:
            raise PromiseViolation("exactly one half must be all-zero")
        m = len(self.left)
        nonzero = self.right if left_zero else self.left
        if 2 * nonzero.count("1") < m:
            raise PromiseViolation(
                f"nonzero half has weight {nonzero.count('1')} < {m}/2")

    @property
    def m(self) -> int:
        return len(self.left)

    @property
    def nonzero_weight(self) -> int:
        return self.left.count("1") + self.right.count("1")


def g_eval(x: GInput | str) -> int:
    """1 iff the input has weight 0."""
    if not isinstance(x, GInput):
        x = GInput(x)
    return 1 if x.weight == 0 else 0


def h_eval(z: HInput) -> int:
    """1 iff the left half is the all-zero one."""
    return 1 if "1" not in z.left else 0


@dataclass(frozen=True)
class ComposedInstance:
    """Blocks of inner instances whose answers form a valid outer input."""

    blocks: tuple[HInput, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise PromiseViolation("need at least one block")
        if len({b.m for b in blocks}) != 1:
            raise PromiseViolation("all blocks must share the same inner size")
        object.__setattr__(self, "blocks", blocks)
        GInput(self.induced_bits)  # raises PromiseViolation when unbalanced

    @property
    def outer_arity(self) -> int:
        return len(self.blocks)

    @property
    def inner_m(self) -> int:
        return self.blocks[0].m

    @property
    def induced_bits(self) -> str:
        return "".join(str(h_eval(b)) for b in self.blocks)


@dataclass(frozen=True)
class LasVegasTrace:
    """Outcome of one zero-error run: the answer plus its query accounting."""

    answer: int
    queries: int
    steps: int

    def __post_init__(self):
        if self.queries != 2 * self.steps or self.steps < 0:
            raise ValueError("queries must equal 2 * steps")


def _ones_first(weight: int, m: int) -> str:
    return "1" * weight + "0" * (m - weight)


def structured_counterexample(m: int) -> ComposedInstance:
    """Four blocks with (left, right) weights (0,3m/4), (m,0), (0,m/2), (3m/4,0).

    Blocks 1 and 3 answer 1, blocks 2 and 4 answer 0, so the induced outer
    input is the balanced string 1010.  Ones are placed at the lexicographically
    first positions of each nonzero half.
    """
    if not isinstance(m, (int, np.integer)) or m < 4 or m % 4:
        raise BadArity(f"inner size must be a positive multiple of 4, got {m!r}")
    zero = "0" * m
    blocks = (
        HInput(zero, _ones_first(3 * m // 4, m)),
        HInput(_ones_first(m, m), zero),
        HInput(zero, _ones_first(m // 2, m)),
        HInput(_ones_first(3 * m // 4, m), zero),
    )
    return ComposedInstance(blocks)


def las_vegas_h_with_order(z: HInput, order: Sequence[int]) -> LasVegasTrace:
    """Run the zero-error algorithm querying positions in the given order."""
    if sorted(order) != list(range(z.m)):
        raise BadParameter("order must be a permutation of range(m)")
    for step, j in enumerate(order, start=1):
        if z.left[j] == "1":
            return LasVegasTrace(answer=0, queries=2 * step, steps=step)
        if z.right[j] == "1":
            return LasVegasTrace(answer=1, queries=2 * step, steps=step)
    raise AssertionError("promise guarantees a 1 is found")  # pragma: no cover


def las_vegas_h(z: HInput, seed: int) -> LasVegasTrace:
    """Zero-error evaluation of the inner problem with a seeded sampling order.

    Each step queries one fresh position in both halves (two queries) and
    stops at the first 1.  At most m/2 positions can miss the nonzero half's
    ones, so steps <= m/2 + 1 and queries <= m + 2.
    """
    order = np.random.default_rng(seed).permutation(z.m)
    return las_vegas_h_with_order(z, [int(j) for j in order])


def h_first_step_exit_prob(z: HInput) -> float:
    """Probability that the first sampled pair already contains a 1."""
    return z.nonzero_weight / z.m


@lru_cache(maxsize=None)
def _exit_within_enum(m: int, w: int, t: int) -> Fraction:
    """P(stop within t steps) by enumerating all length-t sampling prefixes."""
    t = min(t, m)
    ones = set(range(w))  # exchangeable positions: only the count matters
    hit = 0
    total = 0
    for prefix in itertools.permutations(range(m), t):
        total += 1
        if any(j in ones for j in prefix):
            hit += 1
    return Fraction(hit, total)


@lru_cache(maxsize=None)
def _exit_within_tail(m: int, w: int, t: int) -> Fraction:
    """Same probability via the hypergeometric tail: all-miss needs t zeros."""
    if t > m - w:
        return Fraction(1)
    return 1 - Fraction(math.comb(m - w, t), math.comb(m, t))


def _exit_within(m: int, w: int, t: int) -> Fraction:
    if t <= 0:
        return Fraction(0)
    # enumeration stays cheap up to m = 8; beyond that the closed form takes over
    if m <= 8:
        return _exit_within_enum(m, w, t)
    return _exit_within_tail(m, w, t)


def exit_within_prob(z: HInput, steps: int) -> float:
    """Exact probability that las_vegas_h terminates within `steps` steps."""
    if steps < 0:
        raise BadParameter("steps must be nonnegative")
    return float(_exit_within(z.m, z.nonzero_weight, steps))


def expected_steps_exact(z: HInput) -> float:
    """Exact mean number of steps of las_vegas_h on z."""
    m, w = z.m, z.nonzero_weight
    mean = Fraction(0)
    for k in range(1, m - w + 2):
        mean += k * (_exit_within(m, w, k) - _exit_within(m, w, k - 1))
    return float(mean)


def majority_vote_error(k: int, p_err) -> float:
    """Exact probability that k independent votes with error p_err majority-fail.

    Binomial tail sum over j > k/2 of C(k,j) p^j (1-p)^(k-j).  Exact rational
    arithmetic is preserved when p_err is a Fraction.
    """
    if not isinstance(k, (int, np.integer)) or k < 1 or k % 2 == 0:
        raise BadRepetitionCount(f"repetition count must be odd and >= 1, got {k!r}")
    if not 0 <= p_err < 0.5:
        raise BadParameter(f"error rate must lie in [0, 1/2), got {p_err!r}")
    q = 1 - p_err
    tail = sum(math.comb(k, j) * p_err ** j * q ** (k - j)
               for j in range(k // 2 + 1, k + 1))
    return float(tail)


# --- JSON serialization of composed instances (hex-packed blocks) ---------

def _pack_bits(bits: str) -> str:
    width = (len(bits) + 3) // 4
    return format(int(bits, 2), f"0{width}x")


def _unpack_bits(packed: str, nbits: int) -> str:
    value = int(packed, 16)
    if value < 0:
        raise ParseError(f"hex block {packed!r} must be nonnegative")
    bits = format(value, f"0{nbits}b")
    if len(bits) > nbits:
        raise ParseError(f"hex block {packed!r} does not fit in {nbits} bits")
    return bits


def instance_to_json(inst: ComposedInstance) -> str:
    """Serialize blocks as hex-packed left+right bit strings."""
    payload = {
        "m": inst.inner_m,
        "blocks": [_pack_bits(b.left + b.right) for b in inst.blocks],
    }
    return json.dumps(payload, indent=2) + "\n"


def instance_from_json(text: str) -> ComposedInstance:
    """Inverse of instance_to_json; promise validation still applies."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid instance JSON: {exc}") from exc
    if not isinstance(payload, dict) or "m" not in payload or "blocks" not in payload:
        raise ParseError("instance JSON needs fields 'm' and 'blocks'")
    m = payload["m"]
    if not isinstance(m, int) or m < 1:
        raise ParseError("'m' must be a positive integer")
    blocks = payload["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, str) for b in blocks):
        raise ParseError("'blocks' must be a list of hex strings")
    parsed = []
    for packed in blocks:
        try:
            bits = _unpack_bits(packed, 2 * m)
        except ValueError as exc:
            raise ParseError(f"invalid hex block {packed!r}") from exc
        parsed.append(HInput(bits[:m], bits[m:]))
    return ComposedInstance(tuple(parsed))
