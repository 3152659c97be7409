"""Adaptive order-0 arithmetic coding over per-context frequency counters.

Integer coder with 32-bit ``low``/``high`` registers and carry-free
renormalization by counting pending (underflow) bits.  Cumulative intervals
are taken over symbols in ascending order, and a table's counter for the
coded symbol is incremented by one after the symbol has been coded.
"""

from __future__ import annotations

from collections.abc import Iterable

from .integer_code import bytes_to_bits

__all__ = [
    "ArithmeticDecoder",
    "ArithmeticEncoder",
    "FrequencyTable",
    "MAX_TOTAL",
    "PayloadExhausted",
    "STATE_BITS",
    "decode_symbol",
    "encode_symbol",
]

STATE_BITS = 32
_FULL = (1 << STATE_BITS) - 1
_HALF = 1 << (STATE_BITS - 1)
_QUARTER = 1 << (STATE_BITS - 2)
_THREE_QUARTERS = _HALF + _QUARTER
# keeps every symbol interval non-empty: range > QUARTER >= total
MAX_TOTAL = _QUARTER


class PayloadExhausted(ValueError):
    """The decoder needed more bits than the payload can legitimately supply."""


class FrequencyTable:
    """Counters N(c | context) for one coding context.

    Admissible symbols start at 1, all others at 0.  Symbols with a zero
    count cannot be coded.
    """

    __slots__ = ("counts", "total")

    def __init__(self, J: int, admissible: Iterable[int]):
        self.counts = [0] * J
        for c in admissible:
            self.counts[c] = 1
        self.total = sum(self.counts)

    def interval(self, c: int) -> tuple[int, int]:
        counts = self.counts
        if counts[c] == 0:
            raise ValueError(f"symbol {c} has zero frequency in this context")
        lo = sum(counts[:c])
        return lo, lo + counts[c]

    def find(self, target: int) -> tuple[int, int, int]:
        """Symbol whose cumulative interval contains ``target``."""
        lo = 0
        for c, f in enumerate(self.counts):
            if f and target < lo + f:
                return c, lo, lo + f
            lo += f
        raise ValueError("target outside cumulative range")

    def increment(self, c: int) -> None:
        self.counts[c] += 1
        self.total += 1

    def probability(self, c: int) -> float:
        return self.counts[c] / self.total


class ArithmeticEncoder:
    def __init__(self):
        self.low = 0
        self.high = _FULL
        self.pending = 0
        self.out: list[str] = []
        self.coded = 0
        self._finished = False

    def encode(self, cum_low: int, cum_high: int, total: int) -> None:
        if self._finished:
            raise RuntimeError("encoder already flushed")
        if not 0 <= cum_low < cum_high <= total:
            raise ValueError("empty or malformed symbol interval")
        if total > MAX_TOTAL:
            raise OverflowError(f"frequency total {total} exceeds {MAX_TOTAL}")
        low = self.low
        rng = self.high - low + 1
        high = low + rng * cum_high // total - 1
        low = low + rng * cum_low // total
        out = self.out
        pending = self.pending
        while True:
            if high < _HALF:
                out.append("0" + "1" * pending)
                pending = 0
            elif low >= _HALF:
                out.append("1" + "0" * pending)
                pending = 0
                low -= _HALF
                high -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                pending += 1
                low -= _QUARTER
                high -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
        self.low = low
        self.high = high
        self.pending = pending
        self.coded += 1

    def finish(self) -> str:
        """Flush the final interval; returns the complete payload bit string.

        A stream that coded no symbol produces no bits at all.
        """
        if self._finished:
            raise RuntimeError("encoder already flushed")
        self._finished = True
        if self.coded:
            self.pending += 1
            if self.low < _QUARTER:
                self.out.append("0" + "1" * self.pending)
            else:
                self.out.append("1" + "0" * self.pending)
            self.pending = 0
        return "".join(self.out)


class ArithmeticDecoder:
    """Mirror of :class:`ArithmeticEncoder` reading from a bit string or bytes.

    Reads past the end of the payload are zeros, but a well-formed stream
    never needs more than ``STATE_BITS - 2`` of them; asking for more raises
    :class:`PayloadExhausted`.
    """

    def __init__(self, payload: bytes | str):
        self.bits = payload if isinstance(payload, str) else bytes_to_bits(payload)
        self.pos = 0
        self.low = 0
        self.high = _FULL
        self.value = 0
        self._started = False

    def _next_bit(self) -> int:
        pos = self.pos
        self.pos = pos + 1
        if pos < len(self.bits):
            return 1 if self.bits[pos] == "1" else 0
        if pos - len(self.bits) >= STATE_BITS - 2:
            raise PayloadExhausted("arithmetic payload exhausted")
        return 0

    def _start(self) -> None:
        if not self.bits:
            raise PayloadExhausted("arithmetic payload is empty")
        value = 0
        for _ in range(STATE_BITS):
            value = (value << 1) | self._next_bit()
        self.value = value
        self._started = True

    def target(self, total: int) -> int:
        if not self._started:
            self._start()
        rng = self.high - self.low + 1
        return ((self.value - self.low + 1) * total - 1) // rng

    def consume(self, cum_low: int, cum_high: int, total: int) -> None:
        low = self.low
        rng = self.high - low + 1
        high = low + rng * cum_high // total - 1
        low = low + rng * cum_low // total
        value = self.value
        while True:
            if high < _HALF:
                pass
            elif low >= _HALF:
                low -= _HALF
                high -= _HALF
                value -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                low -= _QUARTER
                high -= _QUARTER
                value -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            value = (value << 1) | self._next_bit()
        self.low = low
        self.high = high
        self.value = value


def encode_symbol(coder: ArithmeticEncoder, table: FrequencyTable, c: int) -> None:
    lo, hi = table.interval(c)
    coder.encode(lo, hi, table.total)
    table.increment(c)


def decode_symbol(decoder: ArithmeticDecoder, table: FrequencyTable) -> int:
    total = table.total
    c, lo, hi = table.find(decoder.target(total))
    decoder.consume(lo, hi, total)
    table.increment(c)
    return c
