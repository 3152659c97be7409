import itertools
import random

import pytest
from hypothesis import given, strategies as st

from adca.antidictionary import (
    Antidictionary, compute_mfws, dictionary, format_antidictionary, is_factor,
    parse_antidictionary, validate,
)
from adca.automaton import automaton_for
from oracles import brute_mfws, random_walk, substrings


def w(s):
    return tuple(int(ch) for ch in s)


def test_dictionary_examples():
    assert dictionary(w("01"), 2) == {(), (0,), (1,), (0, 1)}
    assert dictionary((), 5) == {()}
    expected = substrings(w("0010010"), 3)
    assert expected == {w(s) for s in ["", "0", "1", "00", "01", "10", "001", "010", "100"]}
    assert dictionary(w("0010010"), 3) == expected


def test_mfw_examples():
    assert compute_mfws(w("01"), 2, 2).words == {w("00"), w("10"), w("11")}
    assert brute_mfws(w("01"), 2, 2) == {w("00"), w("10"), w("11")}
    assert compute_mfws((), 3, 2).words == {(0,), (1,)}


def test_mfws_of_three_word_source_sample():
    A = Antidictionary.from_strings(2, ["11", "000", "10101"])
    x = random_walk(automaton_for(A), 2000, random.Random(11))
    assert compute_mfws(x, 5, 2).words <= A.words


def test_out_of_alphabet_symbol():
    with pytest.raises(ValueError):
        compute_mfws((0, 2), 2, 2)


@pytest.mark.parametrize("J", [1, 2, 3])
def test_oracle_equivalence_small(J):
    for n in range(0, 7 if J == 3 else 9):
        for x in itertools.product(range(J), repeat=n):
            for m in (1, 2, 3, 4):
                assert compute_mfws(x, m, J).words == brute_mfws(x, m, J)


@given(st.integers(1, 3).flatmap(
    lambda J: st.tuples(st.just(J), st.lists(st.integers(0, J - 1), max_size=30), st.integers(1, 6))))
def test_closure_property(args):
    J, x, m = args
    D = substrings(x)
    A = compute_mfws(x, m, J)
    assert not validate(A) or not A.words
    for u in A.words:
        assert u not in D
        assert u[1:] in D and u[:-1] in D


@given(st.lists(st.integers(0, 1), max_size=25), st.lists(st.integers(0, 1), max_size=10),
       st.integers(1, 5))
def test_monotone_consistency(x, ext, m):
    for u in compute_mfws(x + ext, m, 2).words:
        assert not is_factor(u, x)


def test_validate_examples():
    assert validate(Antidictionary.from_strings(2, ["11", "000", "10101"])) == []
    assert validate(Antidictionary.from_strings(2, ["01", "10", "11"])) == []
    report = validate(Antidictionary.from_strings(2, ["0", "00"]))
    assert report == ["(0,) is a substring of (0, 0)"]
    assert validate(Antidictionary(2, frozenset({(), (1,)})))
    assert validate(Antidictionary(2, frozenset({(2,)})))
    assert validate(Antidictionary(2, frozenset()))


def test_text_format_round_trip():
    A = Antidictionary.from_strings(2, ["11", "000", "10101"])
    text = format_antidictionary(A)
    assert text == "alphabet 2\n1 1\n0 0 0\n1 0 1 0 1\n"
    parsed, extra = parse_antidictionary(text + "# comment\nprob 10 1 0.3\n")
    assert parsed == A
    assert extra == [["prob", "10", "1", "0.3"]]
