"""The orthonormal Hadamard matrix on Z_2^n and its fast transform."""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import GuardExceeded
from .gf2 import Subspace, orthogonal_complement, parity, span_elements

MAX_FWHT_N = 24
MAX_ORTHO_CHECK_N = 20


def hadamard_entry(i: int, j: int, n: int) -> float:
    """(-1)^{<i,j>} / sqrt(2^n)."""
    N = 1 << n
    if not (0 <= i < N and 0 <= j < N):
        raise IndexError(f"index ({i}, {j}) out of range for N={N}")
    return (-1.0) ** parity(i & j) / np.sqrt(N)


def hadamard_matrix(n: int) -> np.ndarray:
    """Dense H built entry by entry from the parity rule; for small n only."""
    if n > 14:
        raise GuardExceeded("n for dense Hadamard matrix", n, 14)
    idx = np.arange(1 << n, dtype=np.uint64)
    signs = np.bitwise_count(idx[:, None] & idx[None, :]) & 1
    return (1.0 - 2.0 * signs) / np.sqrt(1 << n)


def _log2_len(length: int) -> int:
    n = length.bit_length() - 1
    if length < 1 or (1 << n) != length:
        raise ValueError(f"length {length} is not a power of two")
    return n


def fwht_inplace(buf: np.ndarray) -> np.ndarray:
    """Apply H along the last axis of ``buf`` in place and return it.

    Unnormalized +/- butterflies over n rounds, then one 2^{-n/2} scaling.
    ``buf`` must be C-contiguous so the butterfly views alias it.
    """
    N = buf.shape[-1]
    n = _log2_len(N)
    if n > MAX_FWHT_N:
        raise GuardExceeded("n for fwht", n, MAX_FWHT_N)
    if not buf.flags.c_contiguous:
        raise ValueError("fwht_inplace needs a C-contiguous buffer")
    _butterflies(buf.reshape(-1, N), 2.0 ** (-n / 2))
    return buf


@njit(cache=True, nogil=True)
def _butterflies(rows, scale):
    N = rows.shape[1]
    for r in range(rows.shape[0]):
        v = rows[r]
        h = 1
        while h < N:
            for start in range(0, N, 2 * h):
                for j in range(start, start + h):
                    a = v[j]
                    b = v[j + h]
                    v[j] = a + b
                    v[j + h] = a - b
            h *= 2
        for j in range(N):
            v[j] *= scale


def fwht(v) -> np.ndarray:
    """H @ v (row-wise for 2-D input) without touching the input."""
    return fwht_inplace(np.array(v, dtype=np.float64, copy=True))


def indicator_vector(V: Subspace) -> np.ndarray:
    """Unit-norm indicator of V: 2^{-dim/2} on the points of V, zero elsewhere."""
    if V.n > MAX_FWHT_N:
        raise GuardExceeded("n for indicator vector", V.n, MAX_FWHT_N)
    out = np.zeros(1 << V.n)
    out[span_elements(V)] = 2.0 ** (-V.dim / 2)
    return out


def verify_ortho_lemma(V: Subspace) -> float:
    """Sup-norm distance between H 1_V and 1_{V^⊥}."""
    if V.n > MAX_ORTHO_CHECK_N:
        raise GuardExceeded("n for orthogonality check", V.n, MAX_ORTHO_CHECK_N)
    diff = fwht(indicator_vector(V)) - indicator_vector(orthogonal_complement(V))
    return float(np.max(np.abs(diff)))


def ortho_deviations(subspaces) -> np.ndarray:
    """verify_ortho_lemma for many subspaces of one Z_2^n at once."""
    subspaces = list(subspaces)
    if not subspaces:
        return np.zeros(0)
    n = subspaces[0].n
    if n > MAX_ORTHO_CHECK_N:
        raise GuardExceeded("n for orthogonality check", n, MAX_ORTHO_CHECK_N)
    ind = indicator_rows(subspaces)
    comp = indicator_rows([orthogonal_complement(V) for V in subspaces])
    return np.max(np.abs(fwht_inplace(ind) - comp), axis=1)


def indicator_rows(subspaces) -> np.ndarray:
    """Stacked indicator vectors of subspaces sharing one ambient space."""
    subspaces = list(subspaces)
    n = subspaces[0].n
    if n > MAX_FWHT_N:
        raise GuardExceeded("n for indicator vector", n, MAX_FWHT_N)
    out = np.zeros((len(subspaces), 1 << n))
    by_dim: dict[int, list[int]] = {}
    for i, V in enumerate(subspaces):
        by_dim.setdefault(V.dim, []).append(i)
    for d, idx in by_dim.items():
        basis = np.array([subspaces[i].basis for i in idx], dtype=np.int64).reshape(len(idx), d)
        elems = np.zeros((len(idx), 1), dtype=np.int64)
        for c in range(d):
            elems = np.concatenate([elems, elems ^ basis[:, c : c + 1]], axis=1)
        out[np.array(idx)[:, None], elems] = 2.0 ** (-d / 2)
    return out
