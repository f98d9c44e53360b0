"""
Subspace indicators under the Hadamard transform
================================================

A subspace V of Z_2^n, written as its normalised indicator vector, is sent by
the Hadamard transform to the indicator of its orthogonal complement. This
walk-through builds a few subspaces and watches that happen.
"""

# %%
import numpy as np

from subhadamard import (
    canonicalize,
    enumerate_grassmannian,
    fwht,
    gaussian_binomial,
    indicator_vector,
    orthogonal_complement,
    span_elements,
)

# %%
# Vectors are plain ints; bit j is coordinate j. A subspace is stored by
# its reduced row echelon basis, so equal subspaces compare equal.
V = canonicalize([0b0011, 0b0110], n=4)
print("basis:", [bin(r) for r in V.basis])
print("points:", sorted(span_elements(V)))

# %%
W = orthogonal_complement(V)
print("complement points:", sorted(span_elements(W)))

# %%
# The transform of 1_V is 1_W, to rounding.
x = indicator_vector(V)
y = fwht(x)
print("max |H 1_V - 1_W| =", np.max(np.abs(y - indicator_vector(W))))

# %%
# Over F_2 a subspace can be its own complement; the transform fixes it.
line = canonicalize([0b11], n=2)
print(orthogonal_complement(line) == line, fwht(indicator_vector(line)))

# %%
# Counting: the enumerator and the Gaussian binomial agree.
for n in range(1, 6):
    print(n, [sum(1 for _ in enumerate_grassmannian(n, d)) for d in range(n + 1)],
          [gaussian_binomial(n, d) for d in range(n + 1)])
