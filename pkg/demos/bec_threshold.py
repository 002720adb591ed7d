"""
Bit-MAP error on the erasure channel
====================================

Constrained codewords are sent over a BEC and decoded with the bit-MAP rule
for the parent code. Every erased bit is either forced by the others or
exactly a coin flip, so the decoder is plain linear algebra.
"""

from rmrll import BEC, build_subcode, estimate_pb, subcode_decoder

trials = 2000

for m in (7, 9):
    spec = build_subcode(m, 0.5, 1)
    print(f"m={m}  n={spec.n}  message bits={spec.message_bits}")
    for eps in (0.3, 0.4, 0.45, 0.5, 0.55, 0.6):
        ch = BEC(eps)
        res = estimate_pb(spec.encode, spec.message_bits, ch, subcode_decoder(spec, ch), trials, seed=0)
        print(f"  eps={eps:.2f}  Pb={res.pb:.5f} +/- {res.std_error:.5f}")

# the parent code has rate close to 1/2, so the error climbs steeply near eps = 1/2
# and the curve gets sharper as m grows
