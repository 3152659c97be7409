import itertools
import random

import pytest

from adca.antidictionary import Antidictionary, InvalidAntidictionary, compute_mfws
from adca.automaton import (
    FORBIDDEN, DegenerateAutomaton, automaton_for, build_f, build_g, check_synchronization,
    classify, dump, state_of, step,
)
from oracles import avoids, longest_suffix_in


def A_(*words, J=2):
    return Antidictionary.from_strings(J, words)


THREE_WORD = A_("11", "000", "10101")


def loc(G, s):
    return G.index(tuple(int(ch) for ch in s))


def test_build_f_three_word_states():
    F = build_f(THREE_WORD)
    normal = [w for w, k in zip(F.loci, F.kinds) if k == "normal"]
    sinks = [w for w, k in zip(F.loci, F.kinds) if k == "sink"]
    assert normal == [(), (0,), (1,), (0, 0), (1, 0), (1, 0, 1), (1, 0, 1, 0)]
    assert len(sinks) == 3
    for s in range(F.num_states):
        assert len(F.delta[s]) == 2 and None not in F.delta[s]
        if F.kinds[s] == "sink":
            assert F.delta[s] == (s, s)


def test_build_f_all_single_symbols():
    F = build_f(A_("0", "1"))
    assert F.kinds.count("normal") == 1 and F.kinds.count("sink") == 2
    with pytest.raises(DegenerateAutomaton):
        build_g(F)


def test_build_f_golden_mean_edges():
    F = build_f(A_("11"))
    one = F.index((1,))
    assert F.loci[F.delta[one][1]] == (1, 1)
    assert F.kinds[F.delta[one][1]] == "sink"
    assert F.delta[one][0] == F.index(())


def test_build_f_rejects_invalid():
    with pytest.raises(InvalidAntidictionary):
        build_f(A_("0", "00"))


def test_build_g_edge_sets():
    G = automaton_for(THREE_WORD)
    assert G.num_states == 7
    assert G.edges(loc(G, "")) == [0, 1]
    assert G.edges(loc(G, "00")) == [1]
    assert G.edges(loc(G, "1")) == [0]
    G = automaton_for(A_("11"))
    assert G.edges(loc(G, "")) == [0, 1]
    assert G.edges(loc(G, "1")) == [0]


def test_step_examples():
    G = automaton_for(A_("11", "000"))
    assert step(G, loc(G, "00"), 1) == loc(G, "1")
    assert step(G, loc(G, "00"), 0) is FORBIDDEN
    assert step(G, loc(G, "1"), 0) == loc(G, "0")


def test_state_of_examples():
    G = automaton_for(A_("11", "000"))
    assert state_of(G, ()) == G.initial == 0
    assert state_of(G, (0, 0, 1, 0, 0, 1, 0)) == loc(G, "0")
    assert state_of(G, (0, 0, 1, 1)) is FORBIDDEN


def test_classify_examples():
    G = automaton_for(THREE_WORD)
    s1, s2 = classify(G)
    assert len(s1) + len(s2) == 7 and loc(G, "00") in s1
    G = automaton_for(A_("11"))
    assert classify(G) == (frozenset({loc(G, "1")}), frozenset({loc(G, "")}))
    G = automaton_for(Antidictionary.of(1, [(0, 0, 0)]), strict=False)
    s1, s2 = classify(G)
    assert s2 == frozenset() and len(s1) == 3


@pytest.mark.parametrize("A", [A_("11"), A_("11", "000"), THREE_WORD, A_("01", "22", "1210", J=3),
                               A_("00", "12", "201", J=3)])
def test_language_equivalence(A):
    G = automaton_for(A)
    for n in range(0, 11 if A.J == 2 else 7):
        for w in itertools.product(range(A.J), repeat=n):
            assert (state_of(G, w) is not FORBIDDEN) == avoids(w, A.words)


@pytest.mark.parametrize("A", [A_("11"), A_("11", "000"), THREE_WORD, A_("01", "22", "1210", J=3)])
def test_suffix_consistency(A):
    G = automaton_for(A)
    U = set(G.loci)
    for s in range(G.num_states):
        for a in G.edges(s):
            ua = G.loci[s] + (a,)
            assert G.loci[step(G, s, a)] == longest_suffix_in(ua, U)


def test_synchronization_three_word_example():
    G = automaton_for(THREE_WORD)
    w = (0, 1, 0, 0)
    reached = set()
    for s in range(G.num_states):
        t = state_of(G, G.loci[s] + w)
        if t is not FORBIDDEN:
            reached.add(t)
    assert len(reached) == 1
    assert check_synchronization(G, 100, seed=1) == []
    assert check_synchronization(G, 5, pairs=[(2, 2)]) == []


def test_synchronization_random_antidictionaries():
    rng = random.Random(5)
    checked = 0
    while checked < 30:
        J = rng.randint(1, 3)
        x = [rng.randrange(J) for _ in range(rng.randint(3, 14))]
        A = compute_mfws(x, rng.randint(2, 6), J)
        try:
            G = automaton_for(A)
        except ValueError:
            continue
        assert check_synchronization(G, 20, seed=checked) == []
        checked += 1


def test_dump_is_stable():
    text = dump(automaton_for(A_("11")))
    assert text == (
        "alphabet 2\nstates 2\nstate 0 normal lambda\nstate 1 normal 1\n"
        "edge 0 0 0\nedge 0 1 1\nedge 1 0 0\nS1 1\nS2 0\n"
    )
