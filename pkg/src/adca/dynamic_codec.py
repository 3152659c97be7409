"""Dynamic antidictionary codec driven by a depth-bounded suffix trie.

Only the maximum forbidden-word length ``m`` is shared by both sides; the
context depth is ``d = m - 1``.  For each symbol the coding context is the
modified active point ``beta`` of the trie:

* a symbol never seen after ``beta`` is a *novel* event, stored in the
  header as ``(gap, rank)`` where ``rank`` is its position in
  :meth:`ContextTree.rank_list`;
* a context with a single continuation predicts the symbol for free;
* otherwise the symbol is arithmetic-coded with the counters at ``beta``.

Container layout, bit-exact::

    0xDC 0x01 | ω(J) ω(m) ω(n+1) ω(n0+1) {ω(gap+1) rank-1:w}*n0 | pad | payload

where ``w = ceil(log2 J)`` and ``gap`` counts the symbols since the previous
novel event.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .arith_coder import ArithmeticDecoder, ArithmeticEncoder
from .integer_code import BitReader, BitWriter, MalformedCodeword, TruncatedStream, bits_to_bytes, omega_length, symbol_width
from .suffix_tree import ContextTree

__all__ = [
    "DynamicCodeword",
    "DynamicStats",
    "MalformedCodeword",
    "MODE_DYNAMIC",
    "decode_dynamic",
    "dynamic_code_length",
    "encode_dynamic",
    "n0_bound",
    "shallow_beta_bound",
]

MAGIC = 0xDC
MODE_DYNAMIC = 0x01


def n0_bound(J: int, d: int) -> int:
    """Largest possible number of novel events for alphabet size J and depth d."""
    if J == 1:
        return d + 1
    return (J ** (d + 2) - 1) // (J - 1)


def shallow_beta_bound(J: int, d: int) -> int:
    """Largest possible number of steps whose context is shallower than d.

    For J = 1 the count can reach d + 1 (contexts at steps 0..d); the
    J >= 2 closed form evaluated at J = 1 gives the same value.
    """
    if J == 1:
        return d + 1
    return (J ** (d + 1) - 1) // (J - 1)


@dataclass
class DynamicStats:
    novel: int = 0
    forced: int = 0
    coded: int = 0
    shallow_beta: int = 0
    ranks: list[tuple[int, int]] = field(default_factory=list)  # (rank, number of candidates)


@dataclass
class DynamicCodeword:
    J: int
    m: int
    n: int
    records: list[tuple[int, int]]
    payload: bytes
    stats: DynamicStats | None = field(default=None, compare=False, repr=False)

    def header_bits(self) -> str:
        w = BitWriter()
        w.write_uint(MAGIC, 8)
        w.write_uint(MODE_DYNAMIC, 8)
        w.write_omega(self.J)
        w.write_omega(self.m)
        w.write_omega(self.n + 1)
        w.write_omega(len(self.records) + 1)
        width = symbol_width(self.J)
        for gap, rank in self.records:
            w.write_omega(gap + 1)
            w.write_uint(rank - 1, width)
        w.pad()
        return w.getbits()

    def to_bytes(self) -> bytes:
        return bits_to_bytes(self.header_bits()) + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> DynamicCodeword:
        r = BitReader(data)
        try:
            if r.read_uint(8) != MAGIC or r.read_uint(8) != MODE_DYNAMIC:
                raise MalformedCodeword("not a dynamic antidictionary container")
            J = r.read_omega()
            m = r.read_omega()
            n = r.read_omega() - 1
            n0 = r.read_omega() - 1
            if n0 > n:
                raise MalformedCodeword("more novel-symbol records than symbols")
            width = symbol_width(J)
            records = []
            for _ in range(n0):
                gap = r.read_omega() - 1
                rank = r.read_uint(width) + 1
                records.append((gap, rank))
        except TruncatedStream as exc:
            raise MalformedCodeword(f"truncated header: {exc}") from exc
        r.align()
        return cls(J, m, n, records, data[r.pos // 8:])

    def header_integers(self) -> list[int]:
        """Every value written with the omega code, in header order."""
        ints = [self.J, self.m, self.n + 1, len(self.records) + 1]
        for gap, _ in self.records:
            ints.append(gap + 1)
        return ints

    def sizes(self) -> dict[str, int]:
        """Bit counts of the container parts.

        ``c0`` is the whole header: ``length_field`` (ω(n+1)), ``records``
        (the novel-symbol records) and ``header`` (everything else, padding
        included).  ``payload`` is the arithmetic-coded part.
        """
        c0 = len(self.header_bits())
        length_field = omega_length(self.n + 1)
        width = symbol_width(self.J)
        records = sum(omega_length(gap + 1) + width for gap, _ in self.records)
        payload = 8 * len(self.payload)
        return {
            "header": c0 - length_field - records,
            "length_field": length_field,
            "records": records,
            "c0": c0,
            "payload": payload,
            "total": c0 + payload,
        }


def encode_dynamic(x: Sequence[int], m: int, J: int,
                   on_step: Callable[[int, ContextTree], None] | None = None) -> DynamicCodeword:
    if m < 1:
        raise ValueError("m must be at least 1")
    d = m - 1
    tree = ContextTree(J, d)
    coder = ArithmeticEncoder()
    stats = DynamicStats()
    records = []
    last = -1
    for i, a in enumerate(x):
        if not 0 <= a < J:
            raise ValueError(f"symbol {a} at position {i} outside the alphabet of size {J}")
        beta = tree.beta()
        if beta.depth < d:
            stats.shallow_beta += 1
        kids = beta.children
        if a not in kids:
            ranks = tree.rank_list(beta)
            rank = ranks.index(a) + 1
            records.append((i - last - 1, rank))
            stats.ranks.append((rank, len(ranks)))
            last = i
            stats.novel += 1
        elif len(kids) == 1:
            stats.forced += 1
        else:
            counts = beta.counts
            lo = total = 0
            for c in sorted(counts):
                f = counts[c]
                if c < a:
                    lo += f
                total += f
            coder.encode(lo, lo + counts[a], total)
            counts[a] += 1
            stats.coded += 1
        tree.extend(a)
        if on_step is not None:
            on_step(i, tree)
    payload = bits_to_bytes(coder.finish())
    return DynamicCodeword(J, m, len(x), records, payload, stats)


def decode_dynamic(cw: DynamicCodeword | bytes,
                   on_step: Callable[[int, ContextTree], None] | None = None) -> list[int]:
    if isinstance(cw, (bytes, bytearray)):
        cw = DynamicCodeword.from_bytes(bytes(cw))
    J, n = cw.J, cw.n
    if cw.m < 1 or J < 1:
        raise MalformedCodeword("invalid m or alphabet size")
    tree = ContextTree(J, cw.m - 1)
    decoder = ArithmeticDecoder(cw.payload)
    positions = []
    pos = -1
    for gap, _ in cw.records:
        pos += gap + 1
        positions.append(pos)
    if positions and positions[-1] >= n:
        raise MalformedCodeword("novel-symbol record points past the end of the string")
    ev = 0
    next_event = positions[0] if positions else n
    out = []
    for i in range(n):
        beta = tree.beta()
        kids = beta.children
        if i == next_event:
            ranks = tree.rank_list(beta)
            rank = cw.records[ev][1]
            if not 1 <= rank <= len(ranks):
                raise MalformedCodeword(f"rank {rank} out of range 1..{len(ranks)} at position {i}")
            a = ranks[rank - 1]
            ev += 1
            next_event = positions[ev] if ev < len(positions) else n
        elif not kids:
            raise MalformedCodeword(f"context at position {i} has no continuation and no record")
        elif len(kids) == 1:
            a = next(iter(kids))
        else:
            counts = beta.counts
            order = sorted(counts)
            total = sum(counts.values())
            target = decoder.target(total)
            lo = 0
            for a in order:
                f = counts[a]
                if target < lo + f:
                    break
                lo += f
            decoder.consume(lo, lo + f, total)
            counts[a] += 1
        tree.extend(a)
        out.append(a)
        if on_step is not None:
            on_step(i, tree)
    return out


def dynamic_code_length(x: Sequence[int], m: int, J: int) -> dict:
    """Bits per symbol of the dynamic container, split into C0 (header) and C2 (payload)."""
    cw = encode_dynamic(x, m, J)
    sizes = cw.sizes()
    n = max(len(x), 1)
    return {
        "bits_per_symbol": sizes["total"] / n,
        "c0": sizes["c0"],
        "c2": sizes["payload"],
        "total": sizes["total"],
        "n0": len(cw.records),
        "codeword": cw,
    }
