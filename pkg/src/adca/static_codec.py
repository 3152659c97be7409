"""Static antidictionary codec: G(A) predicts, branching states are arithmetic-coded.

Container layout, bit-exact::

    0xDC 0x00 | ω(J) ω(n+1) ω(|A|) {ω(len) sym:w ...}*|A| | pad | payload

with ``w = ceil(log2 J)`` bits per symbol (0 when J = 1) and words in
(length, lexicographic) order.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .antidictionary import Antidictionary
from .arith_coder import ArithmeticDecoder, ArithmeticEncoder, FrequencyTable
from .automaton import Automaton, automaton_for
from .integer_code import BitReader, BitWriter, MalformedCodeword, TruncatedStream, bits_to_bytes, omega_length, symbol_width

__all__ = [
    "MODE_STATIC",
    "MalformedCodeword",
    "StaticCodeword",
    "StaticModel",
    "decode_static",
    "encode_static",
    "static_code_length",
]

MAGIC = 0xDC
MODE_STATIC = 0x00


class StaticModel:
    """Automaton position plus one counter table per branching state."""

    def __init__(self, G: Automaton):
        self.G = G
        self.state = G.initial
        self.tables: dict[int, FrequencyTable] = {}
        for s in range(G.num_states):
            edges = G.edges(s)
            if len(edges) >= 2:
                self.tables[s] = FrequencyTable(G.J, edges)

    def fingerprint(self) -> tuple:
        return (self.state, tuple((s, tuple(t.counts)) for s, t in sorted(self.tables.items())))


@dataclass
class StaticCodeword:
    antidictionary: Antidictionary
    n: int
    payload: bytes
    coded: int = field(default=0, compare=False)

    @property
    def J(self) -> int:
        return self.antidictionary.J

    def _dictionary_bits(self, w: BitWriter) -> None:
        width = symbol_width(self.J)
        w.write_omega(len(self.antidictionary))
        for word in self.antidictionary.sorted_words():
            w.write_omega(len(word))
            for a in word:
                w.write_uint(a, width)

    def header_bits(self) -> str:
        w = BitWriter()
        w.write_uint(MAGIC, 8)
        w.write_uint(MODE_STATIC, 8)
        w.write_omega(self.J)
        w.write_omega(self.n + 1)
        self._dictionary_bits(w)
        w.pad()
        return w.getbits()

    def to_bytes(self) -> bytes:
        return bits_to_bytes(self.header_bits()) + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> StaticCodeword:
        r = BitReader(data)
        try:
            if r.read_uint(8) != MAGIC or r.read_uint(8) != MODE_STATIC:
                raise MalformedCodeword("not a static antidictionary container")
            J = r.read_omega()
            n = r.read_omega() - 1
            count = r.read_omega()
            width = symbol_width(J)
            words = []
            for _ in range(count):
                length = r.read_omega()
                words.append(tuple(r.read_uint(width) for _ in range(length)))
        except TruncatedStream as exc:
            raise MalformedCodeword(f"truncated header: {exc}") from exc
        r.align()
        return cls(Antidictionary(J, frozenset(words)), n, data[r.pos // 8:])

    def header_integers(self) -> list[int]:
        """Every value written with the omega code, in header order."""
        ints = [self.J, self.n + 1, len(self.antidictionary)]
        ints += [len(w) for w in self.antidictionary.sorted_words()]
        return ints

    def sizes(self) -> dict[str, int]:
        """Bit counts of the antidictionary part, the length field and the payload.

        ``dictionary`` also carries the magic/mode bytes, ω(J) and the header
        padding, so the three parts add up to the container size exactly.
        """
        header = len(self.header_bits())
        length_field = omega_length(self.n + 1)
        payload = 8 * len(self.payload)
        return {
            "dictionary": header - length_field,
            "length_field": length_field,
            "payload": payload,
            "total": header + payload,
        }


def encode_static(x: Sequence[int], A: Antidictionary,
                  on_step: Callable[[int, StaticModel], None] | None = None) -> StaticCodeword:
    G = automaton_for(A, strict=False)
    model = StaticModel(G)
    delta = G.delta
    tables = model.tables
    coder = ArithmeticEncoder()
    s = G.initial
    J = G.J
    for i, a in enumerate(x):
        if not 0 <= a < J:
            raise ValueError(f"symbol {a} at position {i} outside the alphabet of size {J}")
        t = delta[s][a]
        if t is None:
            raise ValueError(f"input contains a forbidden word ending at position {i}")
        table = tables.get(s)
        if table is not None:
            counts = table.counts
            lo = sum(counts[:a])
            coder.encode(lo, lo + counts[a], table.total)
            counts[a] += 1
            table.total += 1
        s = t
        if on_step is not None:
            model.state = s
            on_step(i, model)
    model.state = s
    return StaticCodeword(A, len(x), bits_to_bytes(coder.finish()), coder.coded)


def decode_static(cw: StaticCodeword | bytes,
                  on_step: Callable[[int, StaticModel], None] | None = None) -> list[int]:
    if isinstance(cw, (bytes, bytearray)):
        cw = StaticCodeword.from_bytes(bytes(cw))
    try:
        G = automaton_for(cw.antidictionary, strict=False)
    except ValueError as exc:
        raise MalformedCodeword(f"bad antidictionary in header: {exc}") from exc
    model = StaticModel(G)
    delta = G.delta
    tables = model.tables
    decoder = ArithmeticDecoder(cw.payload)
    forced = [(G.edges(s) or [None])[0] for s in range(G.num_states)]
    s = G.initial
    out = []
    for i in range(cw.n):
        table = tables.get(s)
        if table is None:
            a = forced[s]
            if a is None:
                raise MalformedCodeword(f"string continues past a dead-end state at {i}")
        else:
            counts = table.counts
            total = table.total
            target = decoder.target(total)
            lo = 0
            for a, f in enumerate(counts):
                if f and target < lo + f:
                    break
                lo += f
            decoder.consume(lo, lo + f, total)
            counts[a] += 1
            table.total += 1
        s = delta[s][a]
        if s is None:
            raise MalformedCodeword(f"decoded string enters a forbidden transition at {i}")
        out.append(a)
        if on_step is not None:
            model.state = s
            on_step(i, model)
    return out


def static_code_length(x: Sequence[int], A: Antidictionary) -> dict:
    """Bits per symbol of the static container and its three components."""
    cw = encode_static(x, A)
    sizes = cw.sizes()
    n = max(len(x), 1)
    return {
        "bits_per_symbol": sizes["total"] / n,
        "dictionary": sizes["dictionary"],
        "length_field": sizes["length_field"],
        "payload": sizes["payload"],
        "total": sizes["total"],
        "coded": cw.coded,
        "codeword": cw,
    }
