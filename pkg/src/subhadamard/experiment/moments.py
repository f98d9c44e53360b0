"""Closed-form moments of X, the number of kernel witnesses.

Quantities like exp(p 2^d) overflow doubles long before the interesting
regime, so sums are assembled from natural logs and only exponentiated at
the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..counting import (
    PairCountTable,
    claim_hypothesis_holds,
    gaussian_binomial,
    intersection_dim_range,
    pair_count_table,
    t_upper_bound,
)
from ..errors import DimensionMismatch, GuardExceeded
from ..gf2 import Subspace, enumerate_grassmannian, intersect, orthogonal_complement, span_elements
from .sampling import SamplingParams

LN2 = math.log(2.0)


def log_expm1(x: float) -> float:
    """ln(e^x - 1) for x > 0 without overflow."""
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def first_moment(params: SamplingParams) -> float:
    """ln E X = ln |Gr(n,k)| - p * 2^{n-k}."""
    return math.log(gaussian_binomial(params.n, params.k)) - params.p * 2.0 ** (params.n - params.k)


def _intersection_dim(U: Subspace, V: Subspace) -> int:
    return intersect(orthogonal_complement(U), orthogonal_complement(V)).dim


def _check_pair(U: Subspace, V: Subspace, params: SamplingParams) -> None:
    if U.n != params.n or V.n != params.n:
        raise DimensionMismatch(f"subspaces must live in Z_2^{params.n}")
    if U.dim != params.k or V.dim != params.k:
        raise DimensionMismatch(f"subspaces must have dimension {params.k}")


def covariance_ratio(U: Subspace, V: Subspace, params: SamplingParams) -> float:
    """Cov(X_U, X_V) / (E X_U)^2 = exp(p 2^d) - 1 with d = dim(U^⊥ ∩ V^⊥)."""
    _check_pair(U, V, params)
    return math.expm1(params.p * 2.0 ** _intersection_dim(U, V))


def covariance_ratio_direct(U: Subspace, V: Subspace, params: SamplingParams) -> float:
    """Same ratio from raw probabilities: P(both avoid Q) / P(one avoids Q)^2 - 1.

    The union of the two complements is formed as an actual point set.
    """
    _check_pair(U, V, params)
    cu = set(span_elements(orthogonal_complement(U)))
    cv = set(span_elements(orthogonal_complement(V)))
    keep = 1.0 - params.p_hat
    joint = keep ** len(cu | cv)
    single = keep ** len(cu)
    return joint / (single * single) - 1.0


def pair_counts_for(n: int, k: int) -> PairCountTable:
    """Exact T table: brute force for n <= 6, closed form above."""
    if n <= 6:
        return pair_count_table(n, k, method="exhaustive")
    return pair_count_table(n, k, method="formula")


def _log_weighted_sum(log_weights: dict[int, float], p: float) -> float:
    if p == 0.0:
        return 0.0
    terms = [_safe_exp(lw + log_expm1(p * 2.0**d)) for d, lw in log_weights.items()]
    return math.fsum(terms)


def variance_ratio_exact(params: SamplingParams, table: PairCountTable | None = None) -> float:
    """Var X / (E X)^2 = sum_d T(n,k,d) / |Gr(n,k)|^2 * (exp(p 2^d) - 1)."""
    n, k = params.n, params.k
    if table is None:
        table = pair_counts_for(n, k)
    if (table.n, table.k) != (n, k):
        raise ValueError(f"table is for (n,k)=({table.n},{table.k}), need ({n},{k})")
    g = gaussian_binomial(n, k)
    if table.total != g * g:
        raise ValueError("pair-count table is missing entries")
    log_g2 = 2 * math.log(g)
    weights = {d: math.log(c) - log_g2 for d, c in table.counts.items() if c}
    return _log_weighted_sum(weights, params.p)


def variance_ratio_bound(params: SamplingParams) -> float:
    """The same sum with T replaced by its upper bound |Gr(n,d)| |Gr(n-d,n-k-d)|^2."""
    n, k = params.n, params.k
    lo, hi = intersection_dim_range(n, k)
    log_g2 = 2 * math.log(gaussian_binomial(n, k))
    weights = {d: math.log(t_upper_bound(n, k, d)) - log_g2 for d in range(lo, hi + 1)}
    return _log_weighted_sum(weights, params.p)


@dataclass
class Check:
    name: str
    holds: bool
    margin: float


@dataclass
class BoundTerms:
    """The two halves of the split variance sum, as bounded in the proof.

    ``term_I`` = 4c/n covers d < n-k-3 log2 n; ``term_II`` =
    3 log2(n) 2^{(2c/ln2 - 1/2) k(n-k)} covers the top range.
    """

    term_I: float
    log_term_II: float
    checks: list[Check] = field(default_factory=list)

    @property
    def term_II(self) -> float:
        return _safe_exp(self.log_term_II)

    @property
    def total(self) -> float:
        return self.term_I + self.term_II

    @property
    def verdict(self) -> bool:
        return all(c.holds for c in self.checks) and self.total < 1.0

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.holds]


def paper_bound_terms(params: SamplingParams) -> BoundTerms:
    n, k, c, p = params.n, params.k, params.c, params.p
    kk = k * (n - k)
    log2n = math.log2(n)
    term_I = 4 * c / n
    slope = 2 * c / LN2 - 0.5
    log_term_II = math.log(3 * log2n) + slope * kk * LN2 if log2n > 0 else -math.inf
    scale_lhs = p * 2.0 ** (n - k)
    checks = [
        Check("min(k, n-k) >= 12 log2 n", claim_hypothesis_holds(n, k), min(k, n - k) - 12 * log2n),
        Check("p 2^(n-k) <= 2c k(n-k)", scale_lhs <= 2 * c * kk, 2 * c * kk - scale_lhs),
        Check("2c/ln2 < 1/2", slope < 0, -slope),
        Check("2c/n <= 1", 2 * c / n <= 1, 1 - 2 * c / n),
    ]
    return BoundTerms(term_I, log_term_II, checks)


@dataclass
class MomentReport:
    n: int
    k: int
    p_hat: float
    p: float
    c: float
    first_moment: float
    variance_ratio: float
    variance_mode: str
    bounds: BoundTerms

    @property
    def chebyshev_bound(self) -> float:
        return min(1.0, self.variance_ratio)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p_hat": self.p_hat,
            "p": self.p,
            "c": self.c,
            "ln_EX": self.first_moment,
            "variance_ratio": self.variance_ratio,
            "variance_mode": self.variance_mode,
            "chebyshev_bound": self.chebyshev_bound,
            "term_I": self.bounds.term_I,
            "term_II": self.bounds.term_II,
            "ln_term_II": self.bounds.log_term_II,
            "bound_verdict": self.bounds.verdict,
            "checks": [{"name": ch.name, "holds": ch.holds, "margin": ch.margin} for ch in self.bounds.checks],
        }


def moment_report(params: SamplingParams, mode: str = "exact") -> MomentReport:
    if mode == "exact":
        vr = variance_ratio_exact(params)
    elif mode == "bound":
        vr = variance_ratio_bound(params)
    else:
        raise ValueError(f"unknown variance mode {mode!r}")
    return MomentReport(
        params.n,
        params.k,
        params.p_hat,
        params.p,
        params.c,
        first_moment(params),
        vr,
        mode,
        paper_bound_terms(params),
    )


def variance_ratio_pairwise(params: SamplingParams, max_pairs: int = 10**5) -> float:
    """Var X / (E X)^2 straight from the definition, one ordered pair at a time."""
    subs = list(enumerate_grassmannian(params.n, params.k))
    if len(subs) ** 2 > max_pairs:
        raise GuardExceeded("ordered pairs", len(subs) ** 2, max_pairs)
    total = math.fsum(covariance_ratio_direct(U, V, params) for U in subs for V in subs)
    return total / len(subs) ** 2
