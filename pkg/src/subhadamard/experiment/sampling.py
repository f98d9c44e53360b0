"""Bernoulli row sampling with a counter-based generator.

Row j of trial t is kept iff the j-th uniform draw of a Philox stream keyed
by ``seed`` with counter ``(0, 0, stream, t)`` falls below ``p_hat``. The draw
is a pure function of (seed, stream, t, j), so trials can be generated in any
order or on any thread and come out identical. ``stream`` separates
otherwise identical runs, e.g. the points of a sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import GuardExceeded

MAX_SAMPLE_N = 24


@dataclass(frozen=True)
class SamplingParams:
    n: int
    k: int
    p_hat: float
    c: float = 0.1
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.p_hat < 1.0:
            raise ValueError(f"p_hat must lie in [0, 1), got {self.p_hat}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream < 2**64:
            raise ValueError(f"stream must be a 64-bit unsigned integer, got {self.stream}")
        p = self.p
        if p < self.p_hat or (self.p_hat <= 0.5 and p > 2 * self.p_hat):
            raise ValueError(f"p = {p} inconsistent with p_hat = {self.p_hat}")

    @property
    def p(self) -> float:
        """-ln(1 - p_hat): the rate with exp(-p) = 1 - p_hat."""
        return -math.log1p(-self.p_hat)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def K(self) -> int:
        return 1 << self.k


@dataclass(frozen=True)
class SampleMask:
    """The sampled row set Q as a boolean array of length 2^n."""

    n: int
    bits: np.ndarray = field(repr=False)
    cardinality: int = field(init=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.shape != (1 << self.n,):
            raise ValueError(f"mask must have length 2^{self.n}, got shape {bits.shape}")
        bits = bits.copy()
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "cardinality", int(bits.sum()))

    @classmethod
    def from_rows(cls, n: int, rows) -> SampleMask:
        bits = np.zeros(1 << n, dtype=bool)
        bits[list(rows)] = True
        return cls(n, bits)

    @property
    def rows(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __contains__(self, j: int) -> bool:
        return bool(self.bits[j])


def trial_uniforms(seed: int, trial: int, size: int, stream: int = 0) -> np.ndarray:
    bitgen = np.random.Philox(key=seed, counter=[0, 0, stream, trial])
    return np.random.Generator(bitgen).random(size)


def sample_mask(params: SamplingParams, trial: int = 0) -> SampleMask:
    if params.n > MAX_SAMPLE_N:
        raise GuardExceeded("n for sampling", params.n, MAX_SAMPLE_N)
    u = trial_uniforms(params.seed, trial, params.N, params.stream)
    return SampleMask(params.n, u < params.p_hat)


def sample_masks(params: SamplingParams, trials: int, start: int = 0) -> np.ndarray:
    """Boolean array of shape (trials, 2^n); row i is trial ``start + i``."""
    if params.n > MAX_SAMPLE_N:
        raise GuardExceeded("n for sampling", params.n, MAX_SAMPLE_N)
    out = np.empty((trials, params.N), dtype=bool)
    for i in range(trials):
        out[i] = trial_uniforms(params.seed, start + i, params.N, params.stream) < params.p_hat
    return out
