import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subhadamard.errors import DimensionMismatch, GuardExceeded
from subhadamard.gf2 import (
    Gf2Vector,
    Subspace,
    canonicalize,
    dot,
    enumerate_grassmannian,
    full_space,
    intersect,
    orthogonal_complement,
    span_elements,
    sum_space,
    zero_subspace,
)


def brute_span(words):
    out = {0}
    for w in words:
        out |= {x ^ w for x in out}
    return out


@st.composite
def vector_lists(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    words = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n + 2))
    return n, words


def test_dot_examples():
    assert dot(Gf2Vector(0b101, 3), Gf2Vector(0b100, 3)) == 1
    assert dot(Gf2Vector(0, 3), Gf2Vector(0b111, 3)) == 0
    assert dot(Gf2Vector(0b11, 2), Gf2Vector(0b11, 2)) == 0


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        dot(Gf2Vector(1, 2), Gf2Vector(1, 3))


def test_vector_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        Gf2Vector(0b100, 2)


def test_canonicalize_examples():
    V = canonicalize([Gf2Vector(0b11, 2), Gf2Vector(0b01, 2)])
    assert V.basis == (0b10, 0b01) and V.dim == 2
    V = canonicalize([0b110, 0b110], n=3)
    assert V.basis == (0b110,) and V.dim == 1
    Z = canonicalize([], n=4)
    assert Z.dim == 0 and Z == zero_subspace(4)


def test_subspace_rejects_non_canonical_basis():
    with pytest.raises(ValueError):
        Subspace(2, (0b11, 0b10))


def test_span_elements_examples():
    assert span_elements(zero_subspace(3)) == [0]
    assert sorted(span_elements(Subspace(2, (0b10, 0b01)))) == [0, 1, 2, 3]
    assert sorted(span_elements(Subspace(3, (0b110,)))) == [0, 0b110]


def test_span_guard():
    with pytest.raises(GuardExceeded):
        span_elements(full_space(31))


def test_complement_examples():
    assert orthogonal_complement(full_space(3)) == zero_subspace(3)
    line = canonicalize([0b11], n=2)
    assert orthogonal_complement(line) == line
    assert orthogonal_complement(canonicalize([0b01], n=2)) == canonicalize([0b10], n=2)


def test_intersect_examples():
    U = canonicalize([0b100, 0b010], n=3)
    V = canonicalize([0b100, 0b001], n=3)
    expected = {x for x in range(8) if x in brute_span(U.basis) and x in brute_span(V.basis)}
    assert set(span_elements(intersect(U, V))) == expected == {0, 0b100}
    assert intersect(U, U) == U
    assert intersect(U, zero_subspace(3)) == zero_subspace(3)


def test_intersect_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(zero_subspace(2), zero_subspace(3))


def test_enumeration_examples():
    assert [V.basis for V in enumerate_grassmannian(2, 1)] == [(0b01,), (0b10,), (0b11,)]
    for n in range(1, 5):
        assert list(enumerate_grassmannian(n, 0)) == [zero_subspace(n)]


def test_gr42_by_dedup_of_vector_pairs():
    spans = {frozenset(brute_span([a, b])) for a, b in itertools.combinations(range(1, 16), 2)}
    assert len(spans) == 35
    assert {frozenset(span_elements(V)) for V in enumerate_grassmannian(4, 2)} == spans


def test_enumeration_budget():
    with pytest.raises(GuardExceeded):
        enumerate_grassmannian(10, 5, budget=1000)


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_distinct_and_complete(n):
    from subhadamard.counting import gaussian_binomial

    for d in range(n + 1):
        subs = list(enumerate_grassmannian(n, d))
        assert len(subs) == len(set(subs)) == gaussian_binomial(n, d)
        assert all(V.dim == d for V in subs)


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_round_trip_and_complement_bijection(n):
    for d in range(n + 1):
        subs = list(enumerate_grassmannian(n, d))
        for V in subs:
            assert canonicalize(span_elements(V), n=n) == V
        comps = {orthogonal_complement(V) for V in subs}
        assert comps == set(enumerate_grassmannian(n, n - d))


def test_enumeration_order_is_colex_cells():
    pivots = [V.pivots for V in enumerate_grassmannian(4, 2)]
    cells = list(dict.fromkeys(tuple(sorted(p)) for p in pivots))
    assert cells == sorted(cells, key=lambda c: c[::-1])


@settings(max_examples=200, deadline=None)
@given(vector_lists())
def test_canonicalize_matches_brute_span(nw):
    n, words = nw
    V = canonicalize(words, n=n)
    assert set(span_elements(V)) == brute_span(words)
    assert len(span_elements(V)) == 1 << V.dim
    # canonicity: bit-identical for any spanning list of the same set
    assert canonicalize(list(reversed(span_elements(V))), n=n) == V
    piv = V.pivots
    assert list(piv) == sorted(piv, reverse=True) and len(set(piv)) == len(piv)
    for r in V.basis:
        for p in piv:
            if p != r.bit_length() - 1:
                assert not (r >> p) & 1


@settings(max_examples=200, deadline=None)
@given(vector_lists())
def test_complement_properties(nw):
    n, words = nw
    V = canonicalize(words, n=n)
    W = orthogonal_complement(V)
    assert W.dim == n - V.dim
    assert all(dot(a, b) == 0 for a in V.vectors() for b in W.vectors())
    assert orthogonal_complement(W) == V
    brute = {w for w in range(1 << n) if all((w & v).bit_count() % 2 == 0 for v in span_elements(V))}
    assert set(span_elements(W)) == brute


@settings(max_examples=200, deadline=None)
@given(vector_lists(max_n=5), st.data())
def test_dimension_formula(nw, data):
    n, words = nw
    other = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n + 1))
    U, V = canonicalize(words, n=n), canonicalize(other, n=n)
    I = intersect(U, V)
    assert set(span_elements(I)) == set(span_elements(U)) & set(span_elements(V))
    assert I.dim + sum_space(U, V).dim == U.dim + V.dim


def test_contains():
    V = canonicalize([0b110, 0b011], n=3)
    assert all(x in V for x in span_elements(V))
    assert 0b001 not in V
