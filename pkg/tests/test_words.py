from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from glword.errors import WordSyntaxError
from glword.forest import build_support, support_stats
from glword.table1 import TABLE1
from glword.words import (Word, cyclic_reduction, format_word, free_reduce, is_proper_power, parse_word,
                          power_decompose, random_word)

A, B = 1, 2


def test_parse_commutator():
    assert parse_word("[a,b]", 2).letters == (A, B, -A, -B)


def test_parse_free_reduction():
    assert parse_word("abB", 2).letters == (A,)


def test_parse_powers():
    assert parse_word("a^2b^3", 2).letters == (A, A, B, B, B)


def test_parse_inverse_notations():
    assert parse_word("a^-1 b", 2) == parse_word("Ab", 2)
    assert parse_word("(ab)^-2", 2).letters == (-B, -A, -B, -A)
    assert parse_word("[a,b]^2", 2).letters == (A, B, -A, -B) * 2


def test_parse_rank_inferred_and_checked():
    assert parse_word("a^2b^2c^2").rank == 3
    with pytest.raises(WordSyntaxError):
        parse_word("c", 2)


@pytest.mark.parametrize("text", ["a(", "[a,b", "a^", "a^x", "a b ]", "?", "a^{2}"])
def test_parse_errors_carry_position(text):
    with pytest.raises(WordSyntaxError) as ei:
        parse_word(text, 3)
    assert ei.value.position is not None


def test_power_decompose_examples():
    rd = power_decompose(parse_word("abab"))
    assert (rd.root.letters, rd.exponent, rd.conjugator.letters) == ((A, B), 2, ())
    rd = power_decompose(parse_word("a[a,b]a^-1"))
    assert (rd.root.letters, rd.exponent, rd.conjugator.letters) == ((A, B, -A, -B), 1, (A,))
    rd = power_decompose(parse_word("[a,b]"))
    assert (rd.root.letters, rd.exponent, rd.conjugator.letters) == ((A, B, -A, -B), 1, ())


def test_proper_power_detection():
    assert is_proper_power(parse_word("bab^-1 a^3 b a^-1 b^-1"))
    assert not is_proper_power(parse_word("abAB"))
    assert not is_proper_power(Word((), 2))


def test_support_paths():
    f = build_support(parse_word("[a,b]"), 1)
    assert f.n == 5
    f = build_support(parse_word("a^2"), 1)
    assert [v[1] for v in f.vertices] == [(), (A,), (A, A)]
    f = build_support(parse_word("[a,b]"), 2)
    assert f.n == 10
    assert [f.label(v) for v in f.vertices[:4]] == ["e1", "e2", "e1.a", "e2.a"]


def test_support_stats_examples():
    st_ = support_stats(build_support(parse_word("[a,b]"), 1))
    origins_a, e_a = st_[A]
    assert e_a == 2 and sorted(origins_a, key=len) == [(0, ()), (0, (A, B, -A))]
    assert st_[B][1] == 2
    st_ = support_stats(build_support(parse_word("a^3", 2), 1))
    assert st_[A][1] == 3 and st_[B][1] == 0
    st_ = support_stats(build_support(parse_word("[a,b]"), 2))
    assert st_[A][1] == 4 and st_[B][1] == 4


def test_n_min_matches_table():
    assert [build_support(parse_word(r.word), 1).n_min() for r in TABLE1] == [1, 2, 3, 2, 3, 4, 2]


words = st.builds(lambda n, r, s: random_word(n, r, random.Random(s)),
                  st.integers(0, 12), st.integers(1, 3), st.integers(0, 2 ** 32))


@given(words)
def test_print_parse_roundtrip(w):
    assert parse_word(format_word(w.letters), w.rank) == w
    assert parse_word(format_word(w.letters, compress=True), w.rank) == w


@given(words)
def test_cyclic_reduction_and_root(w):
    c, z = cyclic_reduction(w)
    assert len(c) <= len(w)
    assert z * c * z.inverse() == w
    if not w.is_trivial():
        rd = power_decompose(w)
        assert len(c) % rd.exponent == 0
        assert rd.rebuild() == w
        assert power_decompose(rd.root).exponent == 1


@given(words)
def test_edge_count_is_length(w):
    f = build_support(w, 1)
    assert sum(f.e(g) for g in range(1, w.rank + 1)) == len(w)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20))
def test_free_reduce_idempotent(xs):
    r = free_reduce(xs)
    assert free_reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
