"""
Upper bound for (1, inf) subcodes
=================================

Below the crossover rate the counting bound beats the trivial bound ``R``.
The columns printed here are the data behind the usual comparison plot; pipe
``rmrll bounds`` into any plotting tool for the full grid.
"""

import numpy as np

from rmrll import RLLConstraint, achievable_rate, coset_baseline, noiseless_capacity, r_star, rll_rate_upper_bound

c0 = noiseless_capacity(RLLConstraint(1))
print(f"noiseless capacity of (1, inf): {c0:.6f}")
print(f"crossover rate: {r_star():.6f}")

print("    R   achievable  upper   baseline")
for R in np.arange(0.05, 1.0, 0.05):
    print(f" {R:.2f}   {achievable_rate(R, 1):.4f}    {rll_rate_upper_bound(R):.4f}  {coset_baseline(c0, R):.4f}")
