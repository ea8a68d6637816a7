"""Generalized Zeckendorf decompositions and the legal digit grammar."""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

from .const import CLOSING_CONDITION1, CLOSING_CONDITION2
from .errors import NotLegal, OutOfRange, Unrepresentable
from .recurrence import RecurrenceSpec, SequenceTable

_LOGGER = logging.getLogger(__name__)

START_STATE = 1


# ---------------------------
#   DigitGrammar
# ---------------------------
class DigitGrammar:
    """Deterministic automaton for legal digit strings.

    State r means the current block has matched c_1..c_{r-1}. In state r a
    digit below c_r closes the block, a digit equal to c_r (r < L) extends
    it, anything else is rejected. Every state is accepting: state 1 ends a
    super-legal string, state r > 1 ends with a condition-(1) block.
    """

    def __init__(self, spec: RecurrenceSpec):
        """Initialize from a recurrence spec."""
        self.spec = spec
        self.coeffs = spec.coeffs
        self.order = spec.order
        self.states = tuple(range(START_STATE, self.order + 1))

    # ---------------------------
    #   step
    # ---------------------------
    def step(self, state: int, digit: int) -> Optional[int]:
        """Return the next state or None when the digit is rejected."""
        cap = self.coeffs[state - 1]
        if 0 <= digit < cap:
            return START_STATE

        if digit == cap and state < self.order:
            return state + 1

        return None

    # ---------------------------
    #   transitions
    # ---------------------------
    def transitions(self, state: int) -> List[tuple]:
        """Return (digit, next_state) pairs allowed in a state, largest digit first."""
        cap = self.coeffs[state - 1]
        ret = []
        if state < self.order:
            ret.append((cap, state + 1))

        ret.extend((digit, START_STATE) for digit in range(cap - 1, -1, -1))
        return ret

    # ---------------------------
    #   run
    # ---------------------------
    def run(self, coeffs: Sequence[int], state: int = START_STATE) -> Optional[int]:
        """Return the final state after reading coeffs, None if rejected."""
        for digit in coeffs:
            state = self.step(state, digit)
            if state is None:
                return None

        return state

    # ---------------------------
    #   digit_cap
    # ---------------------------
    def digit_cap(self, state: int) -> int:
        """Largest digit accepted in a state."""
        cap = self.coeffs[state - 1]
        return cap if state < self.order else cap - 1


# ---------------------------
#   Block
# ---------------------------
@dataclass(frozen=True)
class Block:
    """One grammar unit of a legal string, padding zeros excluded."""

    start: int
    digits: tuple
    closing: str
    trailing_zeros: int = 0

    @property
    def length(self) -> int:
        return len(self.digits)

    def as_dict(self) -> dict:
        return {
            "digits": list(self.digits),
            "length": self.length,
            "closing": self.closing,
            "trailing_zeros": self.trailing_zeros,
        }


# ---------------------------
#   Decomposition
# ---------------------------
@dataclass(frozen=True)
class Decomposition:
    """Coefficients a_1..a_n over G_n..G_1 with a_1 >= 1 unless value is 0."""

    coeffs: tuple
    value: int
    table: SequenceTable

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def padded(self, width: int) -> tuple:
        """Fixed-width view with leading zeros."""
        if width < len(self.coeffs):
            raise OutOfRange(f"width {width} < length {len(self.coeffs)}")

        return (0,) * (width - len(self.coeffs)) + self.coeffs

    def blocks(self) -> List[Block]:
        return segment_blocks(self.coeffs, self.table.spec)

    def as_dict(self) -> dict:
        return {
            "value": str(self.value),
            "coeffs": list(self.coeffs),
            "blocks": [list(block.digits) for block in self.blocks()],
            "block_details": [block.as_dict() for block in self.blocks()],
            "leading_zeros": leading_zeros(self.blocks(), self.length),
        }


# ---------------------------
#   greedy_digits
# ---------------------------
def greedy_digits(m: int, table: SequenceTable, width: int, grammar: DigitGrammar) -> List[int]:
    """Capped greedy digits over G_width..G_1; raises Unrepresentable on leftovers."""
    digits = []
    state = START_STATE
    remainder = m
    for index in range(width, 0, -1):
        g = table.g_values[index - 1]
        digit = min(remainder // g, grammar.digit_cap(state))
        remainder -= digit * g
        state = grammar.step(state, digit)
        digits.append(digit)

    if remainder:
        raise Unrepresentable(f"{m} leaves remainder {remainder}")

    return digits


# ---------------------------
#   decompose
# ---------------------------
def decompose(m: int, table: SequenceTable, width: Optional[int] = None) -> Decomposition:
    """Legal decomposition of m over G_1..G_width (default: the whole table)."""
    width = len(table) if width is None else width
    if width > len(table):
        raise OutOfRange(f"width {width} exceeds table length {len(table)}")

    upper = table.g(width + 1)
    if m < 0 or m >= upper:
        raise OutOfRange(f"{m} not in [0, {upper})")

    grammar = DigitGrammar(table.spec)
    digits = greedy_digits(m, table, width, grammar)
    while digits and digits[0] == 0:
        digits.pop(0)

    ret = Decomposition(tuple(digits), m, table)
    if grammar.run(ret.coeffs) is None or reconstruct(ret) != m:
        raise Unrepresentable(f"{m} produced an invalid string {ret.coeffs}")

    return ret


# ---------------------------
#   reconstruct
# ---------------------------
def reconstruct(d: Decomposition) -> int:
    """Return sum of a_i * G_{n+1-i}."""
    return digits_value(d.coeffs, d.table)


def digits_value(coeffs: Sequence[int], table: SequenceTable) -> int:
    n = len(coeffs)
    return sum(a * table.g(n + 1 - i) for i, a in enumerate(coeffs, start=1) if a)


# ---------------------------
#   is_legal
# ---------------------------
def is_legal(coeffs: Sequence[int], spec: RecurrenceSpec) -> bool:
    """True iff the string satisfies the legal grammar."""
    if any(a < 0 for a in coeffs):
        return False

    return DigitGrammar(spec).run(coeffs) is not None


# ---------------------------
#   is_super_legal
# ---------------------------
def is_super_legal(coeffs: Sequence[int], spec: RecurrenceSpec) -> bool:
    """True iff every block closes with a digit below its coefficient."""
    if any(a < 0 for a in coeffs):
        return False

    return DigitGrammar(spec).run(coeffs) == START_STATE


# ---------------------------
#   iter_blocks
# ---------------------------
def iter_blocks(coeffs: Sequence[int], grammar: DigitGrammar) -> Iterator[tuple]:
    """Yield (start, digits, closing) for the parse where every zero at a block start is its own block."""
    state = START_STATE
    start = 1
    for pos, digit in enumerate(coeffs, start=1):
        if state == START_STATE:
            start = pos

        state = grammar.step(state, digit)
        if state is None:
            raise NotLegal(f"digit {digit} at position {pos}")

        if state == START_STATE:
            yield start, tuple(coeffs[start - 1:pos]), CLOSING_CONDITION2

    if state != START_STATE:
        yield start, tuple(coeffs[start - 1:]), CLOSING_CONDITION1


# ---------------------------
#   segment_blocks
# ---------------------------
def segment_blocks(coeffs: Sequence[int], spec: RecurrenceSpec, zero_blocks: bool = False) -> List[Block]:
    """Split a legal string into blocks.

    Zeros that open a block are padding: they are attributed to the previous
    block as trailing zeros, and leading ones are dropped (the first block's
    start records them). With zero_blocks each such zero is a length-1 block.
    """
    grammar = DigitGrammar(spec)
    blocks = []
    for start, digits, closing in iter_blocks(tuple(coeffs), grammar):
        if not zero_blocks and digits == (0,):
            if blocks:
                last = blocks[-1]
                blocks[-1] = Block(last.start, last.digits, last.closing, last.trailing_zeros + 1)
            continue

        blocks.append(Block(start, digits, closing))

    return blocks


# ---------------------------
#   blocks_to_coeffs
# ---------------------------
def blocks_to_coeffs(blocks: Sequence[Block], width: int) -> tuple:
    """Inverse of segment_blocks for a string of the given width."""
    ret = []
    for block in blocks:
        ret.extend([0] * (block.start - 1 - len(ret)))
        ret.extend(block.digits)
        ret.extend([0] * block.trailing_zeros)

    ret.extend([0] * (width - len(ret)))
    return tuple(ret)


# ---------------------------
#   leading_zeros
# ---------------------------
def leading_zeros(blocks: Sequence[Block], width: int) -> int:
    """Length of the zero run before the first block; the whole width when there is none."""
    return blocks[0].start - 1 if blocks else width


# ---------------------------
#   summand_count
# ---------------------------
def summand_count(d: Decomposition) -> int:
    """Number of summands with multiplicity."""
    return sum(d.coeffs)
