"""Search for subspaces V in Gr(n, k) whose complement avoids the sampled rows.

The search runs over W = V^⊥ in Gr(n, m), m = n - k, building the canonical
RREF basis of W from its lowest pivot upwards. A partial basis spans
W ∩ span(e_0, ..., e_p) for the current top pivot p, so if that span already
meets Q no completion can avoid Q and the branch is cut. Each W has exactly
one pivot path, so counting leaves counts subspaces without duplicates.

Bookkeeping: for the partial span S, the allowed set A(S) = {v : (v + S) ∩ Q = ∅}
is a union of S-cosets. Each coset is tracked by its S-reduced representative
(zero at every pivot of S), restricted to representatives above the top pivot,
since those are the only ones that can still become rows. Adding a row r
gives A(S + r) = A(S) ∩ (A(S) ^ r). ``level[v]`` holds the deepest depth at
which v is still allowed, so one byte per vector serves the whole stack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..counting import gaussian_binomial
from ..errors import GuardExceeded
from ..gf2 import DEFAULT_ENUM_BUDGET, Subspace, orthogonal_complement, rref
from .sampling import MAX_SAMPLE_N, SampleMask

MAX_COMPLEMENT_DIM = 20


@njit(cache=True, nogil=True)
def _top_bit(x):
    p = -1
    while x:
        x >>= 1
        p += 1
    return p


# recursive kernels are not cached: numba's on-disk cache mishandles recursion
@njit(nogil=True)
def _extend(level, elems, depth, m, n, rows, out_rows, stats, first_only):
    # stats[0]: nodes expanded; stats[1]: 1 once out_rows holds a witness
    if depth == m:
        if stats[1] == 0:
            for i in range(m):
                out_rows[i] = rows[i]
            stats[1] = 1
        return 1
    stats[0] += 1
    remaining = m - depth
    need = (1 << (remaining - 1)) - 1
    total = 0
    L = elems.shape[0]
    i = 0
    while i < L:
        r = elems[i]
        p = _top_bit(r)
        if p > n - remaining:
            break
        hi = 1 << (p + 1)
        j0 = np.searchsorted(elems, hi)
        child = np.empty(L - j0, np.int64)
        cnt = 0
        for j in range(j0, L):
            u = elems[j]
            if (u >> p) & 1 == 0 and level[u ^ r] >= depth:
                child[cnt] = u
                cnt += 1
        if cnt >= need:
            for t in range(cnt):
                level[child[t]] = depth + 1
            rows[depth] = r
            total += _extend(level, child[:cnt], depth + 1, m, n, rows, out_rows, stats, first_only)
            for t in range(cnt):
                level[child[t]] = depth
            if first_only and total > 0:
                return total
        i += 1
    return total


@njit(nogil=True)
def _search(bits, n, m, first_only):
    """Return (count, witness rows ascending by pivot, nodes)."""
    N = bits.shape[0]
    out_rows = np.zeros(max(m, 1), np.int64)
    stats = np.zeros(2, np.int64)
    if bits[0]:
        return 0, out_rows[:m], stats[0]
    level = np.empty(N, np.int8)
    n_allowed = 0
    for v in range(N):
        if bits[v]:
            level[v] = -1
        else:
            level[v] = 0
            if v > 0:
                n_allowed += 1
    elems = np.empty(n_allowed, np.int64)
    c = 0
    for v in range(1, N):
        if not bits[v]:
            elems[c] = v
            c += 1
    rows = np.zeros(max(m, 1), np.int64)
    total = _extend(level, elems, 0, m, n, rows, out_rows, stats, first_only)
    return total, out_rows[:m], stats[0]


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of a witness search or count.

    ``witness`` is a V in Gr(n, k) with Q ∩ V^⊥ = ∅, or None.
    """

    n: int
    k: int
    witness: Subspace | None
    exact_count: int | None
    nodes_explored: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _check_guards(Q: SampleMask, k: int) -> int:
    n = Q.n
    if n > MAX_SAMPLE_N:
        raise GuardExceeded("n for witness search", n, MAX_SAMPLE_N)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    m = n - k
    if m > MAX_COMPLEMENT_DIM:
        raise GuardExceeded("complement dimension n-k", m, MAX_COMPLEMENT_DIM)
    return m


def _witness_from_rows(n: int, rows) -> Subspace:
    W = Subspace(n, rref(int(r) for r in rows))
    return orthogonal_complement(W)


def find_kernel_witness(Q: SampleMask, k: int) -> WitnessReport:
    """Find some V in Gr(n, k) with Q ∩ V^⊥ = ∅.

    The returned V is the one whose complement comes first in the search
    order, so the answer is a deterministic function of Q and k.
    """
    m = _check_guards(Q, k)
    count, rows, nodes = _search(Q.bits, Q.n, m, True)
    witness = _witness_from_rows(Q.n, rows) if count else None
    return WitnessReport(Q.n, k, witness, None, int(nodes))


def count_witnesses(Q: SampleMask, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> WitnessReport:
    """Exact number X of V in Gr(n, k) with Q ∩ V^⊥ = ∅."""
    m = _check_guards(Q, k)
    size = gaussian_binomial(Q.n, m)
    if size > budget:
        raise GuardExceeded(f"|Gr({Q.n},{m})|", size, budget)
    count, rows, nodes = _search(Q.bits, Q.n, m, False)
    witness = _witness_from_rows(Q.n, rows) if count else None
    return WitnessReport(Q.n, k, witness, int(count), int(nodes))


def search_bits(bits: np.ndarray, n: int, k: int, first_only: bool) -> int:
    """Low-level entry for simulation loops: count (or 0/1 when ``first_only``)."""
    count, _, _ = _search(bits, n, n - k, first_only)
    return int(count)
