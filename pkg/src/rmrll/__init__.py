"""Run-length-limited subcodes of Reed-Muller codes over BMS channels."""

from .bounds import (
    achievable_rate,
    binomial_tail,
    coset_baseline,
    counting_chain,
    r_star,
    rll_rate_upper_bound,
    shortening_rank_check,
    upper_bound_chain,
)
from .channels import BEC, BIAWGN, BSC, RngStream, capacity, transmit
from .decoding import BECBitMAP, bec_bitmap, estimate_pb, exhaustive_bitmap, subcode_decoder
from .gf2 import BitMatrix, BitVector, determined_coordinates, rank, row_reduce, solve
from .rll import RLLConstraint, count_sequences, noiseless_capacity, satisfies
from .rm_code import RMCode, plotkin_split, shorten, superset_count, weight_distribution
from .subcode import (
    SubcodeSpec,
    build_subcode,
    largest_rll_subcode_bruteforce,
    plotkin_filter_count,
    rate_degree,
    subcode_rate,
)

__version__ = "0.1.0"
