"""Antidictionaries: sets of minimal forbidden words (MFWs) of a string.

Words are tuples of integer symbols in ``range(J)``; the empty tuple is the
null word.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "Antidictionary",
    "InvalidAntidictionary",
    "Word",
    "compute_mfws",
    "contains_any",
    "dictionary",
    "format_antidictionary",
    "is_factor",
    "parse_antidictionary",
    "read_antidictionary",
    "validate",
]

Word = tuple[int, ...]


class InvalidAntidictionary(ValueError):
    pass


@dataclass(frozen=True)
class Antidictionary:
    J: int
    words: frozenset[Word] = field(default_factory=frozenset)

    @classmethod
    def of(cls, J: int, words: Iterable[Sequence[int]]) -> Antidictionary:
        return cls(J, frozenset(tuple(w) for w in words))

    @classmethod
    def from_strings(cls, J: int, words: Iterable[str]) -> Antidictionary:
        """Build from digit strings such as ``"10101"`` (J <= 10 only)."""
        return cls.of(J, (tuple(int(ch) for ch in w) for w in words))

    @property
    def max_len(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def sorted_words(self) -> list[Word]:
        """Members in canonical (length, lexicographic) order."""
        return sorted(self.words, key=lambda w: (len(w), w))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.sorted_words())

    def __contains__(self, w) -> bool:
        return tuple(w) in self.words


def is_factor(u: Sequence[int], v: Sequence[int]) -> bool:
    """True if ``u`` occurs as a contiguous substring of ``v``."""
    u, v = tuple(u), tuple(v)
    k = len(u)
    return any(v[i:i + k] == u for i in range(len(v) - k + 1))


def contains_any(x: Sequence[int], words: Iterable[Sequence[int]]) -> bool:
    x = tuple(x)
    return any(is_factor(w, x) for w in words)


def _check_symbols(x: Sequence[int], J: int) -> None:
    for i, a in enumerate(x):
        if not 0 <= a < J:
            raise ValueError(f"symbol {a} at position {i} is outside the alphabet of size {J}")


def dictionary(x: Sequence[int], max_len: int) -> set[Word]:
    """All substrings of ``x`` of length at most ``max_len``, plus the null word."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    x = tuple(x)
    out: set[Word] = {()}
    n = len(x)
    for i in range(n):
        for j in range(i + 1, min(n, i + max_len) + 1):
            out.add(x[i:j])
    return out


def compute_mfws(x: Sequence[int], max_len: int, J: int) -> Antidictionary:
    """Minimal forbidden words of ``x`` with length at most ``max_len``.

    A word ``u a`` is minimal forbidden when it does not occur in ``x`` but
    both ``u`` and ``u[1:] a`` do.  So for each factor ``u`` shorter than
    ``max_len`` the candidates are the symbols that follow ``u[1:]`` in ``x``
    but never follow ``u``.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    x = tuple(x)
    n = len(x)
    if n and (min(x) < 0 or max(x) >= J):
        _check_symbols(x, J)
    # follow[u] = symbols a with u a a factor of x, for |u| < max_len
    follow: dict[Word, set[int]] = {(): set()}
    for k in range(min(max_len, n + 1)):
        for i in range(n - k):
            u = x[i:i + k]
            s = follow.get(u)
            if s is None:
                follow[u] = {x[i + k]}
            else:
                s.add(x[i + k])
        # suffixes of x have no follower but still extend to forbidden words
        if k and x[n - k:] not in follow:
            follow[x[n - k:]] = set()
    mfws = {(a,) for a in range(J) if a not in follow[()]}
    for u, after in follow.items():
        if u:
            for a in follow.get(u[1:], ()):
                if a not in after:
                    mfws.add(u + (a,))
    return Antidictionary(J, frozenset(mfws))


def validate(A: Antidictionary) -> list[str]:
    """Describe every defect of ``A``; an empty list means it is valid."""
    problems = []
    if A.J < 1:
        problems.append(f"alphabet size {A.J} < 1")
    if not A.words:
        problems.append("antidictionary is empty")
    words = A.sorted_words()
    for w in words:
        if len(w) == 0:
            problems.append("null word is a member")
        bad = [a for a in w if not 0 <= a < A.J]
        if bad:
            problems.append(f"word {w} has symbols outside the alphabet: {bad}")
    members = A.words
    for v in words:
        k = len(v)
        for u in sorted({v[i:j] for i in range(k) for j in range(i + 1, k + 1)} - {v},
                        key=lambda w: (len(w), w)):
            if u in members:
                problems.append(f"{u} is a substring of {v}")
    return problems


def parse_antidictionary(text: str) -> tuple[Antidictionary, list[list[str]]]:
    """Parse the text format; returns the antidictionary and any ``prob`` lines.

    Line 1 is ``alphabet J``.  Each further non-empty line is one word as
    space-separated decimal symbols.  Lines starting with ``prob`` are
    passed back unparsed (as token lists) for the source-model loader, and
    ``#`` starts a comment.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidAntidictionary("empty antidictionary file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "alphabet":
        raise InvalidAntidictionary("first line must be 'alphabet J'")
    J = int(head[1])
    words = []
    extra = []
    for ln in lines[1:]:
        tokens = ln.split()
        if tokens[0] == "prob":
            extra.append(tokens)
        else:
            words.append(tuple(int(t) for t in tokens))
    return Antidictionary(J, frozenset(words)), extra


def format_antidictionary(A: Antidictionary) -> str:
    lines = [f"alphabet {A.J}"]
    lines += [" ".join(map(str, w)) for w in A.sorted_words()]
    return "\n".join(lines) + "\n"


def read_antidictionary(path) -> Antidictionary:
    A, _ = parse_antidictionary(Path(path).read_text())
    return A
