"""
Exhaustive checks on small Reed-Muller codes
============================================

For codes with a few thousand codewords everything can be counted directly:
weight distributions, the largest (1, inf) subcode, and the number of
codewords whose support contains a given set.
"""

from rmrll import (
    BitVector,
    RLLConstraint,
    RMCode,
    largest_rll_subcode_bruteforce,
    plotkin_filter_count,
    superset_count,
    weight_distribution,
)

for m, r in [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2)]:
    code = RMCode(m, r)
    wd = weight_distribution(code)
    sub = largest_rll_subcode_bruteforce(code, RLLConstraint(1))
    print(f"RM({m},{r}) dim={code.dim} weights={wd.counts}")
    print(f"   (1,inf) codewords: {sub.count}   plotkin filter: {plotkin_filter_count(code)}")

# codewords of RM(4,1) containing the support of x_4
code = RMCode(4, 1)
g = BitVector([j & 1 for j in range(16)])
print("supersets of supp(x_4):", superset_count(code, g))
