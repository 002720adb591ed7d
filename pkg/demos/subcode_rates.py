"""
Rates of run-length-limited subcodes
====================================

Multiply every codeword polynomial by the product of the last ``z`` variables
and the result never has two ones closer than ``2^z`` apart. This script
tabulates the exact rate of that subcode and how fast it approaches ``R/2^z``.
"""

from rmrll import SubcodeSpec, subcode_rate

R = 0.5

# exact rate is a ratio of big integers, so m can go well past float range
for d in (1, 3, 7):
    print(f"d = {d}")
    for m in (8, 16, 32, 64, 128):
        rate = subcode_rate(m, R, d)
        spec = SubcodeSpec(d=d, m=m, R=R)
        print(f"  m={m:4d}  r_m={spec.r_m:3d}  rate={rate.value:.5f}  limit={rate.asymptote:.5f}")

# the support of every codeword sits on a fixed arithmetic progression
spec = SubcodeSpec(d=3, m=6, R=R)
print(spec.support_positions[:6], "...")
