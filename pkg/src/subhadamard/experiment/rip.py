"""Turning a witness into explicit kernel and non-injectivity certificates."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, WitnessInvalid
from ..gf2 import Subspace, orthogonal_complement, span_elements
from ..transform import fwht, indicator_vector
from .sampling import SampleMask


def verify_kernel(Q: SampleMask, V: Subspace) -> float:
    """max |(H 1_V)_j| over rows j in Q.

    The exact condition Q ∩ V^⊥ = ∅ is checked first on integer points and a
    violation raises WitnessInvalid; the float residual is then only rounding.
    """
    if Q.n != V.n:
        raise DimensionMismatch(f"mask is over Z_2^{Q.n}, subspace over Z_2^{V.n}")
    comp = span_elements(orthogonal_complement(V))
    hit = [int(j) for j in comp if Q.bits[j]]
    if hit:
        raise WitnessInvalid(f"complement meets Q at rows {hit[:8]}")
    rows = Q.rows
    if rows.size == 0:
        return 0.0
    return float(np.max(np.abs(fwht(indicator_vector(V))[rows])))


def non_injectivity_pair(V: Subspace, k: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Split 1_V (2K-sparse, V in Gr(n, k+1)) into K-sparse y, z with y - z = 1_V.

    Support points in ascending index order; the first half goes to y, the
    negated second half to z. Whenever 1_V is in the kernel of H_Q, H_Q y = H_Q z.
    """
    if k is None:
        k = V.dim - 1
    if k < 0 or V.dim != k + 1:
        raise DimensionMismatch(f"need dim V = k+1 = {k + 1}, got {V.dim}")
    x = indicator_vector(V)
    support = np.sort(np.array(span_elements(V)))
    half = support.size // 2
    y = np.zeros_like(x)
    z = np.zeros_like(x)
    y[support[:half]] = x[support[:half]]
    z[support[half:]] = -x[support[half:]]
    return y, z
