"""Monte-Carlo estimates over independent, reproducible trials.

Trial t uses the Philox stream for (seed, t) regardless of which worker runs
it, and results are stored by trial index, so thread count never changes
an answer.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..counting import gaussian_binomial
from ..errors import GuardExceeded
from ..gf2 import DEFAULT_ENUM_BUDGET, Subspace, orthogonal_complement, span_elements
from .sampling import SamplingParams, trial_uniforms
from .search import MAX_COMPLEMENT_DIM, search_bits


def _run_chunk(params: SamplingParams, start: int, stop: int, first_only: bool):
    res = np.empty(stop - start, np.int64)
    card = np.empty(stop - start, np.int64)
    for i, t in enumerate(range(start, stop)):
        bits = trial_uniforms(params.seed, t, params.N, params.stream) < params.p_hat
        card[i] = bits.sum()
        res[i] = search_bits(bits, params.n, params.k, first_only)
    return res, card


def run_trials(params: SamplingParams, trials: int, first_only: bool, workers: int = 1):
    """Per-trial search results and |Q|, both indexed by trial.

    With ``first_only`` the result is a 0/1 witness indicator, otherwise the
    exact count X.
    """
    if params.n - params.k > MAX_COMPLEMENT_DIM:
        raise GuardExceeded("complement dimension n-k", params.n - params.k, MAX_COMPLEMENT_DIM)
    if workers <= 1 or trials < 2:
        return _run_chunk(params, 0, trials, first_only)
    step = max(1, -(-trials // (4 * workers)))
    bounds = [(s, min(s + step, trials)) for s in range(0, trials, step)]
    with ThreadPoolExecutor(workers) as pool:
        parts = list(pool.map(lambda b: _run_chunk(params, b[0], b[1], first_only), bounds))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def binomial_estimate(successes: int, trials: int) -> tuple[float, float]:
    f = successes / trials
    return f, math.sqrt(f * (1 - f) / trials)


def estimate_existence_probability(params: SamplingParams, trials: int, workers: int = 1) -> tuple[float, float]:
    """Fraction of trials with a kernel witness, and its binomial standard error."""
    found, _ = run_trials(params, trials, True, workers)
    return binomial_estimate(int(found.sum()), trials)


def simulate_counts(params: SamplingParams, trials: int, workers: int = 1,
                    budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
    size = gaussian_binomial(params.n, params.n - params.k)
    if size > budget:
        raise GuardExceeded(f"|Gr({params.n},{params.n - params.k})|", size, budget)
    counts, _ = run_trials(params, trials, False, workers)
    return counts


def mean_and_stderr(x) -> tuple[float, float]:
    x = np.asarray(x, dtype=np.float64)
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def empirical_variance_ratio(counts) -> tuple[float, float]:
    """Sample Var X / (mean X)^2 with a delta-method standard error."""
    x = np.asarray(counts, dtype=np.float64)
    T = x.size
    m1 = x.mean()
    m2 = (x * x).mean()
    ratio = m2 / m1**2 - 1.0
    cov = np.cov(np.vstack([x, x * x]), ddof=1) / T
    grad = np.array([-2.0 * m2 / m1**3, 1.0 / m1**2])
    return float(ratio), float(math.sqrt(grad @ cov @ grad))


def estimate_pair_moment(U: Subspace, V: Subspace, params: SamplingParams, trials: int,
                         start: int = 0) -> tuple[float, float]:
    """Monte-Carlo E[X_U X_V]: the chance Q misses both U^⊥ and V^⊥."""
    pts = np.array(sorted(set(span_elements(orthogonal_complement(U))) | set(span_elements(orthogonal_complement(V)))))
    hits = np.empty(trials, dtype=bool)
    for i in range(trials):
        u = trial_uniforms(params.seed, start + i, params.N, params.stream)
        hits[i] = not (u[pts] < params.p_hat).any()
    return binomial_estimate(int(hits.sum()), trials)
