"""Elias omega code for positive integers and the bit-level I/O used by containers.

Bit strings are plain ``str`` objects over ``'0'``/``'1'``.  Containers pack
them most-significant-bit first within each byte and pad the last byte with
zeros.
"""

from __future__ import annotations

import math

__all__ = [
    "BitReader",
    "BitWriter",
    "MalformedCodeword",
    "TruncatedStream",
    "omega_bound",
    "omega_decode",
    "omega_encode",
    "omega_length",
    "symbol_width",
]


class TruncatedStream(ValueError):
    """Raised when a reader runs out of bits in the middle of a field."""


class MalformedCodeword(ValueError):
    """A container header or payload is inconsistent."""


def omega_encode(n: int) -> str:
    if n < 1:
        raise ValueError(f"omega code is defined for n >= 1, got {n}")
    code = "0"
    while n > 1:
        group = format(n, "b")
        code = group + code
        n = len(group) - 1
    return code


def omega_decode(bits: str, pos: int = 0) -> tuple[int, int]:
    """Decode one codeword starting at ``pos``; return ``(n, new_pos)``."""
    n = 1
    while True:
        if pos >= len(bits):
            raise TruncatedStream("omega codeword truncated")
        if bits[pos] == "0":
            return n, pos + 1
        end = pos + n + 1
        if end > len(bits):
            raise TruncatedStream("omega codeword truncated")
        n = int(bits[pos:end], 2)
        pos = end


def omega_length(n: int) -> int:
    length = 1
    while n > 1:
        bl = n.bit_length()
        length += bl
        n = bl - 1
    return length


def omega_bound(n: int) -> float:
    """Upper bound log2 n + 2 log2 log2 n + 7 on the codeword length (n >= 2)."""
    lg = math.log2(n)
    return lg + 2 * math.log2(lg) + 7


def symbol_width(J: int) -> int:
    """Fixed width in bits of one symbol over an alphabet of size J."""
    return (J - 1).bit_length()


class BitWriter:
    def __init__(self):
        self._chunks: list[str] = []
        self.nbits = 0

    def write(self, bits: str) -> None:
        self._chunks.append(bits)
        self.nbits += len(bits)

    def write_uint(self, value: int, width: int) -> None:
        if width == 0:
            if value:
                raise ValueError("non-zero value in a zero-width field")
            return
        if value < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        self.write(format(value, f"0{width}b"))

    def write_omega(self, n: int) -> None:
        self.write(omega_encode(n))

    def pad(self) -> None:
        rem = self.nbits % 8
        if rem:
            self.write("0" * (8 - rem))

    def getbits(self) -> str:
        return "".join(self._chunks)

    def getvalue(self) -> bytes:
        """Return the bytes written so far, zero-padded to a whole byte."""
        return bits_to_bytes(self.getbits())


class BitReader:
    def __init__(self, data: bytes | str, pos: int = 0):
        self.bits = data if isinstance(data, str) else bytes_to_bits(data)
        self.pos = pos

    def remaining(self) -> int:
        return len(self.bits) - self.pos

    def read_uint(self, width: int) -> int:
        if width == 0:
            return 0
        end = self.pos + width
        if end > len(self.bits):
            raise TruncatedStream("fixed-width field truncated")
        value = int(self.bits[self.pos:end], 2)
        self.pos = end
        return value

    def read_omega(self) -> int:
        n, self.pos = omega_decode(self.bits, self.pos)
        return n

    def align(self) -> None:
        self.pos = min(len(self.bits), -(-self.pos // 8) * 8)


def bits_to_bytes(bits: str) -> bytes:
    if not bits:
        return b""
    rem = len(bits) % 8
    if rem:
        bits += "0" * (8 - rem)
    return int(bits, 2).to_bytes(len(bits) // 8, "big")


def bytes_to_bits(data: bytes) -> str:
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")
