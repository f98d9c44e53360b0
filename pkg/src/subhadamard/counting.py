"""Exact counts of subspaces and subspace pairs over GF(2).

Everything here is integer arithmetic on Python ints; logarithms are only
taken for reporting margins, never for deciding an inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GuardExceeded
from .gf2 import (
    DEFAULT_ENUM_BUDGET,
    enumerate_grassmannian,
    orthogonal_complement,
    rank,
    span_elements,
)

MAX_N = 1024


def gaussian_binomial(n: int, d: int) -> int:
    """|Gr(n, d)| over GF(2), exactly."""
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in [0, {MAX_N}], got {n}")
    if d < 0 or d > n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    num = den = 1
    for i in range(d):
        num *= (1 << n) - (1 << i)
        den *= (1 << d) - (1 << i)
    q, r = divmod(num, den)
    assert r == 0
    return q


def grassmannian_bounds(n: int, d: int) -> tuple[int, int]:
    """(2^{d(n-d)}, 2^{d(n-d+1)}), which strictly bracket |Gr(n,d)| for 0 < d < n."""
    if not 0 < d < n:
        raise ValueError(f"bounds are strict only for 0 < d < n, got d={d}, n={n}")
    return 1 << (d * (n - d)), 1 << (d * (n - d + 1))


def intersection_dim_range(n: int, k: int) -> tuple[int, int]:
    """Range of dim(U^⊥ ∩ V^⊥) for U, V in Gr(n, k)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return max(n - 2 * k, 0), n - k


@dataclass(frozen=True)
class PairCountTable:
    """T(n,k,d): ordered pairs (U, V) in Gr(n,k)^2 with dim(U^⊥ ∩ V^⊥) = d."""

    n: int
    k: int
    counts: dict[int, int]
    method: str = field(default="exhaustive", compare=False)

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def check(self) -> None:
        lo, hi = intersection_dim_range(self.n, self.k)
        bad = [d for d in self.counts if not lo <= d <= hi]
        if bad:
            raise AssertionError(f"support {bad} outside [{lo}, {hi}]")
        g = gaussian_binomial(self.n, self.k)
        if self.total != g * g:
            raise AssertionError(f"total {self.total} != |Gr|^2 = {g * g}")


def _span_masks(subspaces) -> np.ndarray:
    # element sets as 64-bit masks; only valid for n <= 6
    out = []
    for W in subspaces:
        m = 0
        for e in span_elements(W):
            m |= 1 << e
        out.append(m)
    return np.array(out, dtype=np.uint64)


def _exhaustive_counts(n: int, k: int) -> dict[int, int]:
    comps = [orthogonal_complement(V) for V in enumerate_grassmannian(n, k)]
    masks = _span_masks(comps)
    hist = np.zeros(n + 1, dtype=np.int64)
    for m in masks:
        sizes = np.bitwise_count(masks & m)
        dims = np.log2(sizes).astype(np.int64)
        hist += np.bincount(dims, minlength=n + 1)
    return {d: int(c) for d, c in enumerate(hist) if c}


def _orbit_counts(n: int, k: int, budget: int) -> dict[int, int]:
    # GL(n, 2) is transitive on Gr(n, k): fix U0 = span(e_0..e_{k-1}), whose
    # complement is {w : low k bits of w are zero}, and scale by |Gr(n,k)|.
    low = (1 << k) - 1
    m = n - k
    hist: dict[int, int] = {}
    for W in enumerate_grassmannian(n, m, budget):
        d = m - rank(r & low for r in W.basis)
        hist[d] = hist.get(d, 0) + 1
    g = gaussian_binomial(n, k)
    return {d: c * g for d, c in sorted(hist.items())}


def _formula_counts(n: int, k: int) -> dict[int, int]:
    # for fixed W0 in Gr(n,m): #{W : dim(W ∩ W0) = d} = 2^{(m-d)^2} [m,d] [n-m,m-d]
    m = n - k
    g = gaussian_binomial(n, k)
    lo, hi = intersection_dim_range(n, k)
    out = {}
    for d in range(lo, hi + 1):
        c = (1 << (m - d) ** 2) * gaussian_binomial(m, d) * gaussian_binomial(n - m, m - d)
        if c:
            out[d] = g * c
    return out


def pair_count_table(n: int, k: int, method: str = "auto", budget: int = DEFAULT_ENUM_BUDGET) -> PairCountTable:
    """Exact pair-count table.

    ``method`` is one of ``"exhaustive"`` (all ordered pairs, n <= 6),
    ``"orbit"`` (fixed first subspace, scaled by |Gr(n,k)|), ``"formula"``
    (closed form), or ``"auto"`` which brute-forces whenever the budget allows.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    g = gaussian_binomial(n, k)
    if method == "auto":
        if n <= 6 and g * g <= budget:
            method = "exhaustive"
        elif g <= budget:
            method = "orbit"
        else:
            raise GuardExceeded(f"|Gr({n},{k})|", g, budget)
    if method == "exhaustive":
        if n > 6:
            raise GuardExceeded("n for exhaustive pair counting", n, 6)
        if g * g > budget:
            raise GuardExceeded(f"|Gr({n},{k})|^2", g * g, budget)
        counts = _exhaustive_counts(n, k)
    elif method == "orbit":
        counts = _orbit_counts(n, k, budget)
    elif method == "formula":
        counts = _formula_counts(n, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PairCountTable(n, k, counts, method)


def t_upper_bound(n: int, k: int, d: int) -> int:
    """|Gr(n,d)| * |Gr(n-d, n-k-d)|^2, an upper bound on T(n,k,d)."""
    lo, hi = intersection_dim_range(n, k)
    if not lo <= d <= hi:
        raise ValueError(f"d={d} outside [{lo}, {hi}] for n={n}, k={k}")
    return gaussian_binomial(n, d) * gaussian_binomial(n - d, n - k - d) ** 2


def log2_int(x: int) -> float:
    # math.log2 handles arbitrarily large ints without overflow
    return math.log2(x)


def claim_hypothesis_holds(n: int, k: int) -> bool:
    return min(k, n - k) >= 12 * math.log2(n)


@dataclass
class TBoundRow:
    d: int
    log2_ratio: float
    threshold: float
    passes: bool

    @property
    def margin(self) -> float:
        return self.threshold - self.log2_ratio


@dataclass
class TBoundReport:
    n: int
    k: int
    applicable: bool
    reason: str = ""
    rows: list[TBoundRow] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return self.applicable and all(r.passes for r in self.rows)


def t_bound_claim_check(n: int, k: int) -> TBoundReport:
    """Check t_upper_bound(n,k,d) / |Gr(n,k)|^2 <= 2^{-k(n-k)/2} for the top range of d.

    The range is every integer d with n-k-3*log2(n) <= d <= n-k. The decision
    is an exact integer comparison; the logged ratios are for display.
    """
    if not 0 < k < n:
        return TBoundReport(n, k, False, f"need 0 < k < n, got k={k}, n={n}")
    if not claim_hypothesis_holds(n, k):
        need = 12 * math.log2(n)
        return TBoundReport(n, k, False, f"min(k, n-k) = {min(k, n - k)} < 12*log2(n) = {need:g}")
    g2 = gaussian_binomial(n, k) ** 2
    e = k * (n - k)
    lo, hi = intersection_dim_range(n, k)
    start = max(lo, math.ceil(n - k - 3 * math.log2(n)))
    rows = []
    for d in range(start, hi + 1):
        t = t_upper_bound(n, k, d)
        if e % 2 == 0:
            ok = (t << (e // 2)) <= g2
        else:
            ok = (t * t << e) <= g2 * g2
        rows.append(TBoundRow(d, log2_int(t) - log2_int(g2), -e / 2, ok))
    return TBoundReport(n, k, True, rows=rows)
