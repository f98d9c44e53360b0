"""Sparse vectors in the kernel of row-subsampled Hadamard matrices.

Exact GF(2) subspace machinery, the fast Walsh-Hadamard transform, exact
subspace counting, and Monte-Carlo experiments on Bernoulli row sampling.
"""

from .counting import (
    PairCountTable,
    gaussian_binomial,
    grassmannian_bounds,
    intersection_dim_range,
    pair_count_table,
    t_bound_claim_check,
    t_upper_bound,
)
from .errors import DimensionMismatch, GuardExceeded, WitnessInvalid
from .gf2 import (
    Gf2Vector,
    Subspace,
    canonicalize,
    dot,
    enumerate_grassmannian,
    intersect,
    orthogonal_complement,
    span_elements,
)
from .transform import fwht, hadamard_entry, indicator_vector, verify_ortho_lemma

__version__ = "0.1.0"
