import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subhadamard.counting import gaussian_binomial
from subhadamard.errors import GuardExceeded
from subhadamard.experiment.sampling import SampleMask, SamplingParams, sample_mask
from subhadamard.experiment.search import count_witnesses, find_kernel_witness
from subhadamard.gf2 import canonicalize, enumerate_grassmannian, orthogonal_complement, span_elements


def brute_count(Q, k):
    n = Q.n
    return sum(
        1
        for V in enumerate_grassmannian(n, k)
        if not any(Q.bits[x] for x in span_elements(orthogonal_complement(V)))
    )


def avoids(Q, V):
    return not any(Q.bits[x] for x in span_elements(orthogonal_complement(V)))


def test_empty_mask():
    for n in range(1, 7):
        Q = SampleMask.from_rows(n, [])
        for k in range(n + 1):
            assert find_kernel_witness(Q, k).found
            assert count_witnesses(Q, k).exact_count == gaussian_binomial(n, k)


def test_zero_row_kills_everything():
    Q = SampleMask.from_rows(5, [0])
    for k in range(6):
        assert not find_kernel_witness(Q, k).found
        assert count_witnesses(Q, k).exact_count == 0


def test_standard_basis_mask():
    Q = SampleMask.from_rows(4, [1, 2, 4, 8])
    rep = find_kernel_witness(Q, 2)
    assert rep.found and rep.witness.dim == 2 and avoids(Q, rep.witness)
    # the example from the documentation is a genuine witness too
    W = canonicalize([0b0011, 0b1100], n=4)
    assert set(span_elements(W)) == {0, 3, 12, 15}
    assert avoids(Q, orthogonal_complement(W))


def test_single_row_count():
    Q = SampleMask.from_rows(4, [5])
    assert count_witnesses(Q, 2).exact_count == 28 == brute_count(Q, 2)
    through = sum(1 for W in enumerate_grassmannian(4, 2) if 5 in W)
    assert through == 7


def test_degenerate_dimensions():
    # k = 0: V = {0}, V^perp is everything, so a witness needs Q empty
    assert not find_kernel_witness(SampleMask.from_rows(3, [5]), 0).found
    assert find_kernel_witness(SampleMask.from_rows(3, []), 0).found
    # k = n: V^perp = {0}, so only the zero row matters
    assert find_kernel_witness(SampleMask.from_rows(3, [1, 2, 3, 4, 5, 6, 7]), 3).found
    assert not find_kernel_witness(SampleMask.from_rows(3, [0]), 3).found


def test_guards():
    Q = SampleMask.from_rows(10, [])
    with pytest.raises(GuardExceeded):
        count_witnesses(Q, 5, budget=100)
    with pytest.raises(ValueError):
        find_kernel_witness(Q, 11)


@pytest.mark.parametrize("n", range(1, 7))
def test_count_matches_brute_force(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(25):
        p = rng.uniform(0.02, 0.5)
        bits = rng.random(1 << n) < p
        bits[0] = False if rng.random() < 0.8 else bits[0]
        Q = SampleMask(n, bits)
        for k in range(n + 1):
            rep = count_witnesses(Q, k)
            assert rep.exact_count == brute_count(Q, k)
            if rep.found:
                assert rep.witness.dim == k and avoids(Q, rep.witness)


def test_count_positive_iff_witness_found_500_masks():
    seen = 0
    for t in range(500):
        n = 1 + t % 6
        params = SamplingParams(n, n // 2, [0.05, 0.15, 0.3][t % 3], seed=9)
        Q = sample_mask(params, t)
        for k in range(n + 1):
            f = find_kernel_witness(Q, k)
            c = count_witnesses(Q, k)
            assert (c.exact_count > 0) == f.found
            if f.found:
                assert avoids(Q, f.witness)
            seen += 1
    assert seen > 500


def test_witness_is_deterministic():
    params = SamplingParams(8, 4, 0.2, seed=3)
    Q = sample_mask(params, 0)
    a, b = find_kernel_witness(Q, 4), find_kernel_witness(Q, 4)
    assert a.witness == b.witness


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_count_property(nq):
    n, rows = nq
    Q = SampleMask.from_rows(n, sorted(rows))
    for k in range(n + 1):
        assert count_witnesses(Q, k).exact_count == brute_count(Q, k)
