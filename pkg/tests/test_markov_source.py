import math

import numpy as np
import pytest

from adca.antidictionary import Antidictionary
from adca.automaton import automaton_for, classify
from adca.markov_source import (
    NonUniqueStationary, SourceModel, entropy_rate, parse_source, sample, stationary, visit_counts,
)
from adca.models import three_word, golden_mean, ternary
from oracles import avoids


def A_(*words, J=2):
    return Antidictionary.from_strings(J, words)


def test_golden_mean_stationary_and_entropy():
    info = stationary(golden_mean())
    assert info.mu == pytest.approx((2 / 3, 1 / 3), abs=1e-12)
    assert info.entropy == pytest.approx(2 / 3, abs=1e-12)


def test_biased_golden_mean_entropy():
    # mu_lambda = 0.7 mu_lambda + mu_1 and mu_1 = 0.3 mu_lambda
    mu_l = 1 / 1.3
    h = -(0.7 * math.log2(0.7) + 0.3 * math.log2(0.3))
    assert stationary(golden_mean(0.7)).entropy == pytest.approx(mu_l * h, abs=1e-12)


def test_deterministic_cycles():
    info = stationary(SourceModel.uniform(A_("00", "11")))
    assert info.mu == pytest.approx((0, 0.5, 0.5), abs=1e-12)
    assert info.entropy == 0
    info = stationary(SourceModel.uniform(A_("00", "02", "10", "11", "21", "22", J=3)))
    assert info.mu == pytest.approx((0, 1 / 3, 1 / 3, 1 / 3), abs=1e-12)
    assert info.entropy == 0


def test_three_word_stationary():
    # recurrent part: from s(10) the chain returns after 3 symbols (via 00)
    # or 5 symbols (via 101, 1010), each with probability 1/2, so
    # mu(10) = 1/4; s(1) and s(00) are visited on every return, the other
    # two states on half of them; s(lambda) and s(0) are transient
    model = three_word()
    info = stationary(model)
    G = model.G
    expected = {(): 0, (0,): 0, (1,): .25, (0, 0): .25, (1, 0): .25, (1, 0, 1): .125, (1, 0, 1, 0): .125}
    for s, locus in enumerate(G.loci):
        assert info.mu[s] == pytest.approx(expected[locus], abs=1e-12)
    assert sum(info.mu) == pytest.approx(1, abs=1e-9)
    P = model.transition_matrix()
    assert np.allclose(np.array(info.mu) @ P, info.mu, atol=1e-9)
    assert info.entropy == pytest.approx(0.25, abs=1e-12)
    assert info.s2_zero == {G.index(()), G.index((0,))}
    assert info.s2_pos == {G.index((1, 0))}

    x = sample(model, 10**6, 123)
    visits, _ = visit_counts(G, x)
    assert np.allclose(np.array(visits) / len(x), info.mu, atol=1e-2)


@pytest.mark.parametrize("make", [golden_mean, lambda: golden_mean(0.7), three_word, ternary])
def test_balanced_and_general_entropy_formula(make):
    model = make()
    info = stationary(model)
    _, s2 = classify(model.G)
    manual = sum(info.mu[s] * -sum(p * math.log2(p) for p in model.probs[s] if p) for s in s2)
    assert entropy_rate(info, model) == pytest.approx(manual, abs=1e-12)
    if all(p in (0, 0.5, 1) for row in model.probs for p in row):
        assert info.entropy == pytest.approx(sum(info.mu[s] for s in s2), abs=1e-12)


def test_multiple_recurrent_classes_rejected():
    with pytest.raises(NonUniqueStationary):
        stationary(SourceModel.uniform(A_("01", "10")))


def test_probability_validation():
    G = automaton_for(A_("11"))
    with pytest.raises(ValueError):
        SourceModel(G, ((0.5, 0.5), (0.5, 0.5)))  # mass on a missing edge
    with pytest.raises(ValueError):
        SourceModel(G, ((1.0, 0.0), (1.0, 0.0)))  # zero on an existing edge
    with pytest.raises(ValueError):
        SourceModel(G, ((0.6, 0.6), (1.0, 0.0)))
    with pytest.raises(ValueError):
        SourceModel.build(G, {((1,), 1): 0.5})


def test_s1_forced_to_one():
    model = SourceModel.build(automaton_for(A_("11")), {((), 0): 0.25})
    assert model.probs == ((0.25, 0.75), (1.0, 0.0))


def test_sample_basics():
    model = golden_mean()
    assert sample(model, 0, 1) == []
    x = sample(model, 10**4, 9)
    assert len(x) == 10**4 and avoids(x, model.antidictionary.words)
    assert sample(model, 500, 4) == sample(model, 500, 4)


def test_sample_avoids_every_model():
    for model in (three_word(), ternary(), golden_mean(0.7)):
        x = sample(model, 5000, 2)
        assert avoids(x, model.antidictionary.words)


def test_golden_mean_visit_frequency():
    model = golden_mean()
    x = sample(model, 10**6, 2024)
    visits, _ = visit_counts(model.G, x)
    assert 0.66 <= visits[0] / len(x) <= 0.675


@pytest.mark.parametrize("make", [three_word, lambda: golden_mean(0.7), ternary])
def test_visit_and_branch_frequencies(make):
    model = make()
    info = stationary(model)
    x = sample(model, 10**6, 77)
    visits, trav = visit_counts(model.G, x)
    assert sum(visits) == len(x)
    for s, v in enumerate(visits):
        assert abs(v / len(x) - info.mu[s]) <= 5e-3
        if v >= 10**4:
            for c in range(model.J):
                assert abs(trav[s][c] / v - model.probs[s][c]) <= 5e-3


def test_parse_source_file_format():
    text = "alphabet 2\n1 1\nprob lambda 0 0.7\n"
    model = parse_source(text)
    assert model.probs == golden_mean(0.7).probs
    text = "alphabet 2\n1 1\n0 0 0\n1 0 1 0 1\nprob 10 1 0.25\n"
    model = parse_source(text)
    s = model.G.index((1, 0))
    assert model.probs[s] == (0.75, 0.25)
    assert parse_source("alphabet 3\n0 1\n2 2\n1 2 1 0\nprob 1,2 0 0.5\n").J == 3
