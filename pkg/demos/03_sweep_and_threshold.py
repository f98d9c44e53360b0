"""
Where witnesses stop existing
=============================

Sweep p_hat on a log grid at (n, k) = (10, 5) and print the witness fraction
next to the Chebyshev bound Var X / (E X)^2 on P(X = 0).
"""

# %%
import numpy as np

from subhadamard.experiment import monotone_violations, pick_threshold_point, run_sweep, sweep_to_csv

# %%
grid = [float(x) for x in np.geomspace(0.01, 0.6, 10)]
rows = run_sweep(10, 5, grid, trials=400, seed=7)
for r in rows:
    print(f"p_hat={r.p_hat:.3f}  fraction={r.witness_fraction:.3f}  P(X=0) bound={r.chebyshev_bound:.3f}")

# %%
i = pick_threshold_point(rows, 0.1)
print("largest p_hat with ratio <= 0.1:", rows[i].p_hat, "fraction", rows[i].witness_fraction)
print("monotonicity violations:", monotone_violations(rows))

# %%
# The same table as the CLI would write it.
print(sweep_to_csv(rows, {"n": 10, "k": 5, "trials": 400, "seed": 7})[:400])
