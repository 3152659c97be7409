"""Antidictionary sources: Markov chains driven by G(A).

A :class:`SourceModel` attaches a probability to every edge of G(A).  The
stationary distribution comes from a direct linear solve, and the entropy
rate sums branch entropies of the branching states weighted by their
stationary mass.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .antidictionary import Antidictionary, Word, parse_antidictionary
from .automaton import Automaton, automaton_for, classify

__all__ = [
    "NonUniqueStationary",
    "SourceModel",
    "StationaryInfo",
    "entropy_rate",
    "load_source",
    "parse_source",
    "sample",
    "stationary",
    "visit_counts",
]

PROB_TOL = 1e-12


class NonUniqueStationary(ValueError):
    pass


@dataclass(frozen=True)
class SourceModel:
    G: Automaton
    # probs[s][c] is p_sc; zero exactly where G has no edge
    probs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        G = self.G
        if len(self.probs) != G.num_states:
            raise ValueError("one probability row per state is required")
        for s, row in enumerate(self.probs):
            if len(row) != G.J:
                raise ValueError(f"state {s}: expected {G.J} probabilities")
            for c, p in enumerate(row):
                has_edge = G.delta[s][c] is not None
                if has_edge and not 0 < p <= 1:
                    raise ValueError(f"state {s}, symbol {c}: edge probability {p} not in (0, 1]")
                if not has_edge and p != 0:
                    raise ValueError(f"state {s}, symbol {c}: probability on a missing edge")
            if abs(sum(row) - 1) > PROB_TOL:
                raise ValueError(f"state {s}: probabilities sum to {sum(row)}")

    @classmethod
    def build(cls, G: Automaton, overrides: Mapping[tuple[Word, int], float] | None = None
              ) -> SourceModel:
        """Uniform branching unless overridden per ``(locus, symbol)``.

        States whose overrides cover only some edges share the remaining mass
        equally among the other edges.  Single-edge states are forced to 1.
        """
        overrides = dict(overrides or {})
        rows = []
        for s in range(G.num_states):
            edges = G.edges(s)
            row = [0.0] * G.J
            if len(edges) == 1:
                row[edges[0]] = 1.0
            else:
                given = {c: overrides.pop((G.loci[s], c)) for c in edges
                         if (G.loci[s], c) in overrides}
                free = [c for c in edges if c not in given]
                rest = 1.0 - sum(given.values())
                for c, p in given.items():
                    row[c] = p
                for c in free:
                    row[c] = rest / len(free)
            rows.append(tuple(row))
        for locus, c in overrides:
            if tuple(locus) not in G.loci:
                raise ValueError(f"no state with locus {locus}")
            if G.delta[G.index(locus)][c] is None:
                raise ValueError(f"state {locus} has no edge labelled {c}")
        return cls(G, tuple(rows))

    @classmethod
    def uniform(cls, A: Antidictionary) -> SourceModel:
        return cls.build(automaton_for(A))

    @property
    def J(self) -> int:
        return self.G.J

    @property
    def antidictionary(self) -> Antidictionary:
        return self.G.antidictionary

    def transition_matrix(self) -> np.ndarray:
        k = self.G.num_states
        P = np.zeros((k, k))
        for s, row in enumerate(self.probs):
            for c, p in enumerate(row):
                if p:
                    P[s, self.G.delta[s][c]] += p
        return P


@dataclass(frozen=True)
class StationaryInfo:
    mu: tuple[float, ...]
    s2_zero: frozenset[int]
    s2_pos: frozenset[int]
    entropy: float


def _recurrent_classes(P: np.ndarray) -> list[list[int]]:
    ncomp, labels = connected_components(csr_matrix(P > 0), directed=True, connection="strong")
    closed = [True] * ncomp
    for i, j in zip(*np.nonzero(P)):
        if labels[i] != labels[j]:
            closed[labels[i]] = False
    return [[int(s) for s in np.flatnonzero(labels == c)] for c in range(ncomp) if closed[c]]


def stationary(model: SourceModel) -> StationaryInfo:
    P = model.transition_matrix()
    k = P.shape[0]
    classes = _recurrent_classes(P)
    if len(classes) != 1:
        raise NonUniqueStationary(f"{len(classes)} recurrent classes; stationary distribution is not unique")
    # mu (P - I) = 0 with one equation replaced by sum(mu) = 1
    M = (P - np.eye(k)).T
    M[-1, :] = 1.0
    rhs = np.zeros(k)
    rhs[-1] = 1.0
    mu = np.linalg.solve(M, rhs)
    if not np.allclose(mu @ P, mu, atol=1e-9):
        raise np.linalg.LinAlgError("stationary solve did not converge")
    mu[np.abs(mu) < PROB_TOL] = 0.0
    transient = set(range(k)) - set(classes[0])
    for s in transient:
        mu[s] = 0.0
    mu = mu / mu.sum()
    _, s2 = classify(model.G)
    s2_zero = frozenset(s for s in s2 if mu[s] == 0)
    info = StationaryInfo(tuple(float(v) for v in mu), s2_zero, s2 - s2_zero, 0.0)
    return StationaryInfo(info.mu, info.s2_zero, info.s2_pos, entropy_rate(info, model))


def entropy_rate(info: StationaryInfo, model: SourceModel) -> float:
    """Entropy rate in bits per symbol; single-edge states contribute nothing."""
    h = 0.0
    for s in info.s2_zero | info.s2_pos:
        branch = -sum(p * math.log2(p) for p in model.probs[s] if p > 0)
        h += info.mu[s] * branch
    return h


def _sampler_tables(model: SourceModel):
    cum, nxt = [], []
    for s, row in enumerate(model.probs):
        acc, c_cum, c_sym = 0.0, [], []
        for c, p in enumerate(row):
            if p > 0:
                acc += p
                c_cum.append(acc)
                c_sym.append(c)
        c_cum[-1] = 1.0
        cum.append(c_cum)
        nxt.append([(c, model.G.delta[s][c]) for c in c_sym])
    return cum, nxt


def sample(model: SourceModel, n: int, seed: int | np.random.Generator | None = None) -> list[int]:
    """Walk G(A) from s(λ) for ``n`` steps, drawing symbols by inverse CDF.

    ``seed`` feeds :func:`numpy.random.default_rng` (PCG64).  Symbols are
    picked in ascending order from one uniform draw per step.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    cum, nxt = _sampler_tables(model)
    u = rng.random(n).tolist()
    out = [0] * n
    s = model.G.initial
    for t in range(n):
        r = u[t]
        row = cum[s]
        j = 0
        while r >= row[j]:
            j += 1
        out[t], s = nxt[s][j]
    return out


def visit_counts(G: Automaton, x: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Per-state visit counts and per-(state, symbol) traversal counts along ``x``.

    A state is visited each time a symbol is emitted from it, so the visit
    counts sum to ``len(x)``.
    """
    visits = [0] * G.num_states
    trav = [[0] * G.J for _ in range(G.num_states)]
    delta = G.delta
    s = G.initial
    for a in x:
        visits[s] += 1
        trav[s][a] += 1
        s = delta[s][a]
        if s is None:
            raise ValueError("string contains a forbidden word")
    return visits, trav


def _parse_locus(token: str, J: int) -> Word:
    if token == "lambda":
        return ()
    if "," in token:
        return tuple(int(t) for t in token.split(","))
    if J > 10:
        raise ValueError("loci over alphabets larger than 10 must be comma-separated")
    return tuple(int(ch) for ch in token)


def parse_source(text: str) -> SourceModel:
    """Antidictionary text plus optional ``prob <locus> <symbol> <p>`` lines."""
    A, extra = parse_antidictionary(text)
    G = automaton_for(A)
    overrides = {}
    for tokens in extra:
        if len(tokens) != 4:
            raise ValueError(f"malformed prob line: {' '.join(tokens)}")
        overrides[(_parse_locus(tokens[1], A.J), int(tokens[2]))] = float(tokens[3])
    return SourceModel.build(G, overrides)


def load_source(path) -> SourceModel:
    return parse_source(Path(path).read_text())
