import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import hadamard

from subhadamard.gf2 import canonicalize, enumerate_grassmannian, full_space, zero_subspace
from subhadamard.transform import (
    fwht,
    fwht_inplace,
    hadamard_entry,
    hadamard_matrix,
    indicator_vector,
    ortho_deviations,
    verify_ortho_lemma,
)


def test_entry_examples():
    for n in (1, 3):
        assert all(hadamard_entry(0, j, n) == pytest.approx(2 ** (-n / 2)) for j in range(1 << n))
    assert hadamard_entry(1, 1, 1) == pytest.approx(-1 / np.sqrt(2))
    assert hadamard_entry(3, 3, 2) == pytest.approx(0.5)
    with pytest.raises(IndexError):
        hadamard_entry(4, 0, 2)


@pytest.mark.parametrize("n", range(0, 8))
def test_matrix_matches_sylvester(n):
    # scipy builds the same Sylvester ordering with integer entries
    assert np.allclose(hadamard_matrix(n), hadamard(1 << n) / np.sqrt(1 << n), atol=0)


@pytest.mark.parametrize("n", [1, 4, 7, 10])
def test_fwht_matches_dense_product(n):
    rng = np.random.default_rng(n)
    v = rng.standard_normal(1 << n)
    dense = (hadamard(1 << n) @ v) / np.sqrt(1 << n)
    assert np.max(np.abs(fwht(v) - dense)) <= 1e-10 * max(1.0, np.max(np.abs(dense)))


def test_fwht_examples():
    n = 5
    e0 = np.zeros(1 << n)
    e0[0] = 1
    const = np.full(1 << n, 2 ** (-n / 2))
    assert np.allclose(fwht(e0), const, atol=1e-15)
    assert np.allclose(fwht(const), e0, atol=1e-15)


def test_fwht_rejects_bad_length():
    with pytest.raises(ValueError):
        fwht(np.zeros(6))


def test_fwht_does_not_mutate_but_inplace_does():
    v = np.arange(8, dtype=float)
    before = v.copy()
    out = fwht(v)
    assert np.array_equal(v, before)
    buf = v.copy()
    fwht_inplace(buf)
    assert np.allclose(buf, out)


def test_fwht_batched_last_axis():
    rng = np.random.default_rng(1)
    M = rng.standard_normal((3, 16))
    buf = M.copy()
    fwht_inplace(buf)
    assert np.allclose(buf, np.stack([fwht(r) for r in M]))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_involution_and_norm(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(1 << n)
    v /= np.linalg.norm(v)
    w = fwht(v)
    assert abs(np.linalg.norm(w) - 1) < 1e-12
    assert np.max(np.abs(fwht(w) - v)) < 1e-12


def test_indicator_examples():
    assert np.array_equal(indicator_vector(zero_subspace(3)), np.eye(8)[0])
    assert np.allclose(indicator_vector(full_space(3)), 8 ** -0.5)
    v = indicator_vector(canonicalize([0b110], n=3))
    assert np.flatnonzero(v).tolist() == [0, 6]
    assert np.allclose(v[[0, 6]], 2 ** -0.5)


def test_ortho_lemma_examples():
    assert verify_ortho_lemma(zero_subspace(6)) < 1e-15
    line = canonicalize([0b11], n=2)
    x = indicator_vector(line)
    assert np.allclose(fwht(x), x, atol=1e-15)
    for V in enumerate_grassmannian(5, 2):
        assert verify_ortho_lemma(V) < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_batched_deviation_agrees_with_single(n):
    subs = list(enumerate_grassmannian(n, n // 2))
    batch = ortho_deviations(subs)
    single = np.array([verify_ortho_lemma(V) for V in subs])
    assert np.allclose(batch, single, atol=1e-15)
    assert batch.max() < 1e-12
