"""Forbidden-word automata F(A) and G(A).

States are numbered canonically: non-sink states first, ordered by locus
length and then lexicographically (so state 0 is the initial state s(λ)),
followed by one sink per antidictionary member in the same order.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass

from .antidictionary import Antidictionary, InvalidAntidictionary, Word, validate

__all__ = [
    "Automaton",
    "DegenerateAutomaton",
    "automaton_for",
    "FORBIDDEN",
    "build_f",
    "build_g",
    "check_synchronization",
    "classify",
    "dump",
    "state_of",
    "step",
]

FORBIDDEN = None

NORMAL = "normal"
SINK = "sink"


class DegenerateAutomaton(ValueError):
    """A state of G(A) has no outgoing edge."""


@dataclass(frozen=True)
class Automaton:
    J: int
    loci: tuple[Word, ...]
    kinds: tuple[str, ...]
    # delta[s][a] is the next state, or None where G(A) has no edge
    delta: tuple[tuple[int | None, ...], ...]
    antidictionary: Antidictionary
    initial: int = 0

    @property
    def num_states(self) -> int:
        return len(self.loci)

    @property
    def is_g(self) -> bool:
        return SINK not in self.kinds

    def edges(self, s: int) -> list[int]:
        """E(s): symbols with an outgoing edge from ``s``, ascending."""
        return [a for a, t in enumerate(self.delta[s]) if t is not None]

    def index(self, locus: Sequence[int]) -> int:
        return self.loci.index(tuple(locus))


def build_f(A: Antidictionary) -> Automaton:
    problems = validate(A)
    if problems:
        raise InvalidAntidictionary("; ".join(problems))
    members = A.sorted_words()
    prefixes = {w[:j] for w in members for j in range(len(w))}
    normal = sorted(prefixes, key=lambda w: (len(w), w))
    loci = normal + members
    kinds = [NORMAL] * len(normal) + [SINK] * len(members)
    where = {w: i for i, w in enumerate(loci)}

    # Aho-Corasick goto function over the trie U ∪ A: in (length, lex)
    # order every failure target is processed before it is needed, and the
    # goto of (u, a) is the longest suffix of ua in U ∪ A
    J = A.J
    delta: list[tuple[int, ...]] = [()] * len(loci)
    fail = [0] * len(loci)
    for i, u in enumerate(loci):
        if kinds[i] == SINK:
            delta[i] = (i,) * J
            continue
        row = []
        for a in range(J):
            child = where.get(u + (a,))
            if child is not None:
                row.append(child)
                fail[child] = delta[fail[i]][a] if u else 0
            else:
                row.append(delta[fail[i]][a] if u else 0)
        delta[i] = tuple(row)
    return Automaton(J, tuple(loci), tuple(kinds), tuple(delta), A)


def build_g(F: Automaton, strict: bool = True) -> Automaton:
    """Delete sinks and the edges into them.

    With ``strict`` a state left without outgoing edges is an error.  The
    codecs pass ``strict=False``: such a dead end can only be the last state
    of a valid string, so it never needs an edge.
    """
    keep = [i for i, k in enumerate(F.kinds) if k == NORMAL]
    delta = []
    for i in keep:
        row = tuple(t if F.kinds[t] == NORMAL else None for t in F.delta[i])
        if strict and all(t is None for t in row):
            raise DegenerateAutomaton(
                f"state s({''.join(map(str, F.loci[i])) or 'λ'}) has no outgoing edge in G(A)"
            )
        delta.append(row)
    # non-sink states come first, so indices are unchanged
    return Automaton(F.J, F.loci[:len(keep)], F.kinds[:len(keep)], tuple(delta),
                     F.antidictionary, F.initial)


def automaton_for(A: Antidictionary, strict: bool = True) -> Automaton:
    """Shortcut for ``build_g(build_f(A), strict)``."""
    return build_g(build_f(A), strict)


def step(G: Automaton, s: int, a: int) -> int | None:
    return G.delta[s][a]


def state_of(G: Automaton, w: Sequence[int]) -> int | None:
    s = G.initial
    for a in w:
        s = G.delta[s][a]
        if s is None:
            return FORBIDDEN
    return s


def classify(G: Automaton) -> tuple[frozenset[int], frozenset[int]]:
    """Split states into S1 (exactly one outgoing edge) and S2 (two or more).

    Dead-end states of a non-strict G(A) are put in S1: they never cost bits.
    """
    s1, s2 = set(), set()
    for s in range(G.num_states):
        (s1 if len(G.edges(s)) <= 1 else s2).add(s)
    return frozenset(s1), frozenset(s2)


def check_synchronization(G: Automaton, trials: int, seed: int = 0,
                          pairs: Sequence[tuple[int, int]] | None = None) -> list[str]:
    """Randomized check that m-1 valid symbols synchronize every pair of states.

    For each state pair, ``trials`` random words of length m-1 are drawn
    symbol by symbol from the edges still valid from both states.  Any pair
    that then ends in different states is reported.
    """
    rng = random.Random(seed)
    m = G.antidictionary.max_len
    if pairs is None:
        pairs = [(i, j) for i in range(G.num_states) for j in range(i + 1, G.num_states)]
    report = []
    for si, sj in pairs:
        for _ in range(trials):
            p, q = si, sj
            w = []
            for _ in range(m - 1):
                options = [a for a in range(G.J)
                           if G.delta[p][a] is not None and G.delta[q][a] is not None]
                if not options:
                    break
                a = rng.choice(options)
                w.append(a)
                p, q = G.delta[p][a], G.delta[q][a]
            else:
                if p != q:
                    report.append(f"w={w} from s{si}, s{sj} reaches s{p} != s{q}")
    return report


def _fmt(w: Word) -> str:
    return " ".join(map(str, w)) if w else "lambda"


def dump(G: Automaton) -> str:
    """Stable text listing of states, edges and the S1/S2 split."""
    lines = [f"alphabet {G.J}", f"states {G.num_states}"]
    for i, (w, k) in enumerate(zip(G.loci, G.kinds)):
        lines.append(f"state {i} {k} {_fmt(w)}")
    for i, row in enumerate(G.delta):
        for a, t in enumerate(row):
            if t is not None:
                lines.append(f"edge {i} {a} {t}")
    if G.is_g:
        s1, s2 = classify(G)
        lines.append("S1 " + " ".join(map(str, sorted(s1))))
        lines.append("S2 " + " ".join(map(str, sorted(s2))))
    return "\n".join(lines) + "\n"
