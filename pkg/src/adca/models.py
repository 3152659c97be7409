"""Source models used by the convergence experiments and tests."""

from __future__ import annotations

from .antidictionary import Antidictionary
from .automaton import automaton_for
from .markov_source import SourceModel

__all__ = ["MODELS", "three_word", "golden_mean", "ternary", "get_model"]


def golden_mean(p0: float = 0.5) -> SourceModel:
    """Binary strings without ``11``; ``p0`` is the probability of 0 after a 0."""
    A = Antidictionary.from_strings(2, ["11"])
    G = automaton_for(A)
    return SourceModel.build(G, {((), 0): p0, ((), 1): 1 - p0})


def three_word() -> SourceModel:
    """A = {11, 000, 10101} with equal branch probabilities."""
    return SourceModel.uniform(Antidictionary.from_strings(2, ["11", "000", "10101"]))


def ternary() -> SourceModel:
    """A = {01, 22, 1210} over three symbols with equal branch probabilities."""
    return SourceModel.uniform(Antidictionary.from_strings(3, ["01", "22", "1210"]))


MODELS = {
    "golden-mean": golden_mean,
    "golden-mean-0.7": lambda: golden_mean(0.7),
    "three-word": three_word,
    "ternary": ternary,
}


def get_model(name: str) -> SourceModel:
    try:
        return MODELS[name]()
    except KeyError:
        raise KeyError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
