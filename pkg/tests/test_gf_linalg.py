from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from glword.errors import FieldError
from glword.gf import field_make, monic_divisors, poly_divmod, poly_str
from glword.linalg import Subspace, span_insert, span_restrict

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_gf5():
    F = field_make(5)
    assert F.mul[2][3] == 1
    assert F.inv[2] == 3


def test_gf4_modulus():
    F = field_make(4)
    x = 2  # the class of x, coded base p
    assert F.mul[x][x] == 3  # x + 1
    assert F.elem_str(3) == "z+1"
    assert F.describe()["modulus"] == poly_str(F.modulus, "z")


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15])
def test_not_prime_power(q):
    with pytest.raises(FieldError):
        field_make(q)


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_field_axioms_exhaustive(q):
    F = field_make(q)
    E = range(q)
    for a, b in itertools.product(E, E):
        assert F.add[a][b] == F.add[b][a] and F.mul[a][b] == F.mul[b][a]
        assert F.sub[F.add[a][b]][b] == a
    for a, b, c in itertools.product(E, E, E):
        assert F.add[F.add[a][b]][c] == F.add[a][F.add[b][c]]
        assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
        assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
    for a in F.units():
        assert F.mul[a][F.inv[a]] == 1


def test_span_insert_examples():
    F = field_make(2)
    s = Subspace(F, 3)
    s2, grew = span_insert(s, [0, 0, 0])
    assert not grew and s2.dim == 0
    s2, grew = span_insert(s, [1, 0, 1])
    assert grew and s2.dim == 1
    # a-1, (a-1)+(b-1), b-1 on coordinates (1, a, b)
    s = Subspace(F, 3)
    assert s.add([1, 1, 0]) and s.add([0, 1, 1]) and not s.add([1, 0, 1])
    assert s.dim == 2


def test_span_restrict_examples():
    F = field_make(2)
    # w - 1 for w = [a,b] on the path 1, a, ab, abA, abAB; D_a = {1, abA}
    s = Subspace.span(F, 5, [[1, 0, 0, 0, 1]])
    assert span_restrict(s, {0, 3}).dim == 0
    assert span_restrict(Subspace.full(F, 3), {0, 1}).dim == 2
    s = Subspace.span(F, 3, [[1, 1, 0], [1, 0, 1]])
    assert span_restrict(s, {0}).dim == 0


def _monic_brute(d, lam, F):
    target = [F.neg[lam]] + [0] * (d - 1) + [1]
    out = []
    for deg in range(d + 1):
        for low in itertools.product(range(F.q), repeat=deg):
            p = tuple(low) + (1,)
            if not any(poly_divmod(F, target, p)[1]):
                out.append(p)
    return sorted(out)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_monic_divisors_against_brute_force(q, d):
    F = field_make(q)
    for lam in F.units():
        got = monic_divisors(d, lam, F)
        assert sorted(got) == _monic_brute(d, lam, F)
        if d >= 2 and lam == 1:
            assert len(got) >= 3


def test_monic_divisor_counts():
    assert len(monic_divisors(2, 1, field_make(2))) == 3
    assert len(monic_divisors(2, 1, field_make(3))) == 4
    assert len(monic_divisors(3, 1, field_make(4))) == 8


def _divisors_of(target, F):
    out = []
    for deg in range(len(target)):
        for low in itertools.product(range(F.q), repeat=deg):
            p = tuple(low) + (1,)
            if not any(poly_divmod(F, target, p)[1]):
                out.append(p)
    return out


def _gcd(F, a, b):
    a, b = tuple(a), tuple(b)
    while any(b):
        a, b = b, poly_divmod(F, a, b)[1]
        while b and not b[-1]:
            b = b[:-1]
    return tuple(F.mul[F.inv[a[-1]]][c] for c in a)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_monic_divisors_multiplicative(q, d):
    # for every split x^d - 1 = f g with gcd(f, g) = 1, the divisor count is the product of counts
    F = field_make(q)
    target = [F.neg[1]] + [0] * (d - 1) + [1]
    total = len(monic_divisors(d, 1, F))
    for f in monic_divisors(d, 1, F):
        g = poly_divmod(F, target, f)[0]
        if _gcd(F, f, g) == (1,):
            assert len(_divisors_of(f, F)) * len(_divisors_of(g, F)) == total


vecs = lambda q, n: st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), max_size=6)


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 6), st.data())
def test_span_order_independent(q, n, data):
    F = field_make(q)
    vs = data.draw(vecs(q, n))
    a = Subspace.span(F, n, vs)
    b = Subspace.span(F, n, list(reversed(vs)))
    assert a == b
    assert Subspace.span(F, n, vs + vs) == a
    for v in vs:
        assert v in a
    support = data.draw(st.sets(st.integers(0, n - 1)))
    r = a.restrict(support)
    assert r.dim <= a.dim == a.restrict(range(n)).dim
    assert r.dim == a.restrict_dim(support)
    assert all(not x for row in r.basis() for i, x in enumerate(row) if i not in support)
    assert a.contains_space(r)
