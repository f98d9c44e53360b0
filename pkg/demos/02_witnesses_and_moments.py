"""
Kernel witnesses for a subsampled Hadamard matrix
=================================================

Keep each row of H independently with probability p_hat. If some V of
dimension k has a complement missing every kept row, 1_V is a 2^k-sparse
vector in the kernel. Here we sample, search, and compare the count of such
V against its first two moments.
"""

# %%
import math

import numpy as np

from subhadamard.experiment import (
    SamplingParams,
    count_witnesses,
    empirical_variance_ratio,
    find_kernel_witness,
    first_moment,
    mean_and_stderr,
    sample_mask,
    simulate_counts,
    variance_ratio_exact,
    verify_kernel,
)

# %%
params = SamplingParams(n=8, k=4, p_hat=0.3, seed=1)
Q = sample_mask(params, trial=0)
print("rows kept:", Q.cardinality, "of", params.N)

rep = find_kernel_witness(Q, params.k)
print("witness:", rep.witness)
print("residual on Q:", verify_kernel(Q, rep.witness))

# %%
# The exact number of witnesses for this draw.
print("X =", count_witnesses(Q, params.k).exact_count)

# %%
# Averaged over draws, X should match E X, and its spread the exact
# variance ratio. 5000 trials keeps this quick.
counts = simulate_counts(params, 5000)
mean, se = mean_and_stderr(counts)
print(f"E X = {math.exp(first_moment(params)):.2f}, sample mean = {mean:.2f} +- {se:.2f}")
vr, vr_se = empirical_variance_ratio(counts)
print(f"Var/mean^2: exact {variance_ratio_exact(params):.4f}, sampled {vr:.4f} +- {vr_se:.4f}")

# %%
# Row 0 sits in every complement, so P(X = 0) is never below p_hat.
print("P(X=0) sampled:", np.mean(counts == 0))
