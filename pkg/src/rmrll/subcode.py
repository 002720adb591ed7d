"""Explicit (d, inf)-RLL subcodes of the rate-R Reed-Muller sequence.

The subcode of RM(m, r_m) consists of evaluations of ``h * g`` where
``h = x_{m-z+1} ... x_m`` with ``z = ceil(log2(d+1))`` and ``g`` is any
polynomial in the first ``m - z`` variables of degree at most ``r_m - z``.
``Eval(h)`` is one exactly at coordinates ``j * 2^z + (2^z - 1)``, so these
codewords are ``Eval(g)`` spread onto an arithmetic progression of step
``2^z > d`` and automatically respect the constraint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .gf2 import BitMatrix, BitVector, unpack_bits
from .rll import RLLConstraint, satisfies_batch
from .rm_code import ENUMERATION_GUARD, RMCode, _check_guard, binom_le, codeword_chunks, plotkin_split

_Q_BRACKET = 40.0


def q_function(t: float) -> float:
    """Standard normal tail probability ``P(Z > t)``."""
    return 0.5 * math.erfc(t / math.sqrt(2.0))


def q_inverse(p: float, tol: float = 1e-13) -> float:
    """Solve ``Q(t) = p`` by bisection."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    lo, hi = -_Q_BRACKET, _Q_BRACKET
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        q = q_function(mid)
        if q == p:
            return mid
        if q > p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rate_degree(m: int, R: float) -> int:
    """Degree ``r_m`` of the rate-R Reed-Muller sequence at length ``2^m``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if not 0.0 < R < 1.0:
        raise ValueError("R must lie in (0, 1)")
    r = math.floor(m / 2 + math.sqrt(m) / 2 * q_inverse(1.0 - R))
    return min(max(r, 0), m)


def shift_for(d: int) -> int:
    """``ceil(log2(d + 1))``; zero for the unconstrained case ``d = 0``."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return int(d).bit_length()


@dataclass(frozen=True)
class SubcodeSpec:
    d: int
    m: int
    R: float

    @property
    def z(self) -> int:
        return shift_for(self.d)

    @property
    def r_m(self) -> int:
        return rate_degree(self.m, self.R)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def inner_degree(self) -> int:
        """Degree bound on ``g``; negative when the subcode is ``{0}``."""
        return self.r_m - self.z

    @property
    def message_bits(self) -> int:
        if self.inner_degree < 0 or self.z > self.m:
            return 0
        return binom_le(self.m - self.z, self.inner_degree)

    @property
    def support_positions(self) -> np.ndarray:
        """Coordinates where ``Eval(h)`` is one."""
        step = 1 << self.z
        return np.arange(step - 1, self.n, step)

    @cached_property
    def parent(self) -> RMCode:
        return RMCode(self.m, self.r_m)

    @cached_property
    def inner(self) -> RMCode | None:
        if self.message_bits == 0:
            return None
        return RMCode(self.m - self.z, self.inner_degree)

    @cached_property
    def generator(self) -> BitMatrix:
        """Rows of the (linear) subcode: inner generator rows placed on the support."""
        k = self.message_bits
        G = np.zeros((k, self.n), dtype=np.uint8)
        if k:
            G[:, self.support_positions] = self.inner.generator.to_array()
        return BitMatrix(G, cols=self.n)

    def encode(self, msg: BitVector) -> BitVector:
        if msg.length != self.message_bits:
            raise ValueError(f"message length {msg.length} != {self.message_bits}")
        if self.message_bits == 0:
            return BitVector.zeros(self.n)
        g_eval = self.inner.encode(msg).to_array()
        out = np.zeros(self.n, dtype=np.uint8)
        out[self.support_positions] = g_eval
        return BitVector(out)

    __call__ = encode

    def constraint(self) -> RLLConstraint:
        return RLLConstraint(self.d)


def build_subcode(m: int, R: float, d: int) -> SubcodeSpec:
    return SubcodeSpec(d=d, m=m, R=R)


@dataclass(frozen=True)
class SubcodeRate:
    exact: Fraction
    asymptote: float

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def gap(self) -> float:
        return self.asymptote - self.value


def subcode_rate(m: int, R: float, d: int) -> SubcodeRate:
    """Exact rate ``binom(m-z, <= r_m-z) / 2^m`` and its limit ``2^-z R``."""
    spec = SubcodeSpec(d=d, m=m, R=R)
    return SubcodeRate(Fraction(spec.message_bits, 1 << m), R / (1 << spec.z))


@dataclass(frozen=True)
class SubcodeCount:
    count: int
    listing: np.ndarray | None = None

    @property
    def log2(self) -> float:
        return math.log2(self.count) if self.count else -math.inf


def _generator_of(code: RMCode | BitMatrix) -> BitMatrix:
    return code.generator if isinstance(code, RMCode) else code


def largest_rll_subcode_bruteforce(
    code: RMCode | BitMatrix,
    c: RLLConstraint,
    guard: int = ENUMERATION_GUARD,
    max_listing: int = 10_000,
) -> SubcodeCount:
    """Count (and list, when small) the codewords satisfying ``c``."""
    G = _generator_of(code)
    _check_guard(G.rows, guard)
    if c.d == 0 and c.unbounded:
        return SubcodeCount(1 << G.rows)
    total = 0
    keep: list[np.ndarray] = []
    for chunk in codeword_chunks(G, guard, max_table_words=1 << 18):
        words = unpack_bits(chunk, G.cols)
        ok = satisfies_batch(words, c)
        total += int(ok.sum())
        if total <= max_listing:
            keep.append(words[ok])
    listing = np.concatenate(keep, axis=0) if total <= max_listing and keep else None
    return SubcodeCount(total, listing)


def plotkin_filter_count(code: RMCode | BitMatrix, guard: int = ENUMERATION_GUARD) -> int:
    """Codewords whose Plotkin halves satisfy ``supp(g) ⊆ supp(h)``.

    Every (1, inf)-constrained codeword passes, so this is an upper bound on
    the size of the largest (1, inf) subcode.
    """
    G = _generator_of(code)
    _check_guard(G.rows, guard)
    total = 0
    for chunk in codeword_chunks(G, guard, max_table_words=1 << 18):
        pairs = unpack_bits(chunk, G.cols).reshape(chunk.shape[0], -1, 2)
        g = pairs[:, :, 0]
        h = pairs[:, :, 0] ^ pairs[:, :, 1]
        violated = ((g == 1) & (h == 0)).any(axis=1)
        total += int((~violated).sum())
    return total


def plotkin_filter_passes(c: BitVector) -> bool:
    g, h = plotkin_split(c)
    return (g & h) == g


__all__ = [
    "SubcodeCount",
    "SubcodeRate",
    "SubcodeSpec",
    "build_subcode",
    "largest_rll_subcode_bruteforce",
    "plotkin_filter_count",
    "plotkin_filter_passes",
    "q_function",
    "q_inverse",
    "rate_degree",
    "shift_for",
    "subcode_rate",
]
