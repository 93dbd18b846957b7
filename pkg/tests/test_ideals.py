from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from glword.forest import build_support, hull_forest
from glword.gf import field_make
from glword.ideals import (basis_from_coincidences, check_c2, classify_exposure, coincidence_count, ideal_equal,
                           is_proper, membership, rank_of, saturate, w_minus_one)
from glword.words import parse_word, random_word

A, B = 1, 2
ONE = (0, ())
F2, F3 = field_make(2), field_make(3)


def star():
    return hull_forest([ONE, (0, (A,)), (0, (B,))], 2)


def el(*terms):
    """Build an element from (coefficient, letters) pairs."""
    out = {}
    for c, z in terms:
        out[(0, z)] = c
    return out


def test_saturate_principal_commutator():
    w = parse_word("[a,b]")
    fo = build_support(w, 1)
    I = saturate([w_minus_one(fo, w.letters, F2)], fo, F2)
    assert I.d == 1 and I.d_b == {A: 0, B: 0}
    assert rank_of(I) == 1 and is_proper(I)
    steps = classify_exposure(I)
    assert [s.kind for s in steps] == ["free"] * 4 + ["coincidence"]
    assert I.generator_strings() == ["abAB + 1"]


def test_augmentation_star():
    fo = star()
    I = saturate([el((1, (A,)), (1, ())), el((1, (B,)), (1, ()))], fo, F2)
    assert I.d == 2 and rank_of(I) == 2
    assert [s.kind for s in classify_exposure(I)] == ["free", "coincidence", "coincidence"]
    assert I.generator_strings() == ["a + 1", "b + 1"]


def test_unit_ideal_on_edge():
    fo = build_support(parse_word("a"), 1)
    I = saturate([el((1, ()))], fo, F2)
    assert I.d == 2 and not is_proper(I) and rank_of(I) == 1
    assert [s.kind for s in classify_exposure(I)] == ["coincidence", "forced"]
    assert basis_from_coincidences(I) == [[1, 0]]


def test_zero_ideal():
    fo = build_support(parse_word("ab"), 1)
    I = saturate([], fo, F2)
    assert rank_of(I) == 0 and I.generators() == []


def test_unit_from_difference_gf3():
    fo = build_support(parse_word("a"), 1)
    I = saturate([el((1, (A,)), (2, ())), el((1, (A,)), (1, ()))], fo, F3)
    assert not is_proper(I)


def test_membership_and_equality():
    fo = build_support(parse_word("a^2"), 1)
    I = saturate([el((1, (A,)), (1, ()))], fo, F2)  # (a - 1) over GF(2)
    assert membership(I, el((1, (A, A)), (1, ())))
    small = build_support(parse_word("a"), 1)
    J = saturate([el((1, (A,)), (1, ()))], small, F2)
    assert ideal_equal(I, J)
    assert not membership(J, el((1, (B,)), (1, ())))
    # same ideal from a shifted generator a(a - 1) = a^2 - a
    K = saturate([el((1, (A, A)), (1, (A,)))], fo, F2)
    assert ideal_equal(I, K)


def _random_ideal(rng):
    q = rng.choice([2, 3, 4])
    F = field_make(q)
    w = random_word(rng.randint(1, 6), rng.randint(1, 3), rng)
    fo = build_support(w, rng.choice([1, 1, 2]))
    gens = [[rng.randrange(q) if rng.random() < 0.4 else 0 for _ in range(fo.n)] for _ in range(rng.randint(0, 3))]
    return saturate(gens, fo, F), gens


def test_random_ideals_rank_and_order_independence():
    rng = random.Random(2024)
    for _ in range(100):
        I, _ = _random_ideal(rng)
        assert check_c2(I.delta, I.forest)
        assert coincidence_count(I) == I.d - sum(I.d_b.values()) == rank_of(I)
        for _ in range(3):
            order = I.forest.random_exploration(rng)
            assert coincidence_count(I, order) == I.rank
        again = saturate(I.delta.basis(), I.forest, I.F)
        assert again.delta == I.delta
        assert saturate(basis_from_coincidences(I), I.forest, I.F).delta == I.delta


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_monotone_and_principal(seed):
    rng = random.Random(seed)
    I, gens = _random_ideal(rng)
    extra = [rng.randrange(I.F.q) for _ in range(I.forest.n)]
    J = saturate(gens + [extra], I.forest, I.F)
    assert J.delta.contains_space(I.delta)
    if any(extra):
        assert saturate([extra], I.forest, I.F).rank == 1


def test_bad_exploration_rejected():
    fo = build_support(parse_word("ab"), 1)
    I = saturate([], fo, F2)
    with pytest.raises(ValueError):
        classify_exposure(I, [0, 2, 1])
