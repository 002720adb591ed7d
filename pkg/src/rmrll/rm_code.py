"""Binary Reed-Muller codes under lexicographic ordering of evaluation points.

Point ``(z_1, ..., z_m)`` sits at coordinate ``sum_i z_i 2^(m-i)``: ``x_1`` is
the most significant variable and ``x_m`` toggles fastest. Message bits follow
the canonical monomial order (degree first, then lexicographic on the variable
set), so message bit 0 is always the constant monomial.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector, in_row_space, nullspace, row_reduce, solve, unpack_bits

#: Largest code dimension for which exhaustive enumeration is attempted.
ENUMERATION_GUARD = 28


class GuardError(RuntimeError):
    """Refusal to enumerate a code whose dimension exceeds the guard."""


def binom_le(n: int, r: int) -> int:
    """``sum_{i=0}^{r} C(n, i)``, exact; zero for negative ``r``."""
    if r < 0 or n < 0:
        return 0
    if r >= n:
        return 1 << n
    if 2 * r > n:
        return (1 << n) - binom_le(n, n - r - 1)
    total = term = 1
    for i in range(1, r + 1):
        term = term * (n - i + 1) // i
        total += term
    return total


def lex_point(index: int, m: int) -> tuple[int, ...]:
    if not 0 <= index < (1 << m):
        raise ValueError(f"index {index} out of range for m={m}")
    return tuple((index >> (m - i)) & 1 for i in range(1, m + 1))


def point_index(point: Sequence[int]) -> int:
    m = len(point)
    return sum((int(z) & 1) << (m - i) for i, z in enumerate(point, start=1))


def monomials(m: int, r: int) -> list[tuple[int, ...]]:
    """Monomials of degree at most ``r`` in ``x_1..x_m`` (1-based variable sets)."""
    return [S for deg in range(min(r, m) + 1) for S in itertools.combinations(range(1, m + 1), deg)]


def _eval_array(S: Sequence[int], m: int) -> np.ndarray:
    idx = np.arange(1 << m, dtype=np.int64)
    out = np.ones(1 << m, dtype=np.uint8)
    for j in S:
        out &= ((idx >> (m - j)) & 1).astype(np.uint8)
    return out


def eval_monomial(S: Sequence[int], m: int) -> BitVector:
    """Evaluation vector of ``prod_{j in S} x_j`` over all ``2^m`` points."""
    for j in S:
        if not 1 <= j <= m:
            raise ValueError(f"variable x_{j} out of range for m={m}")
    return BitVector(_eval_array(S, m))


class RMCode:
    """The code RM(m, r) with its monomial basis and generator matrix."""

    def __init__(self, m: int, r: int):
        if m < 0 or not 0 <= r <= max(m, 0):
            raise ValueError(f"need 0 <= r <= m, got m={m}, r={r}")
        self.m = m
        self.r = r
        self.basis = monomials(m, r)

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rate(self) -> float:
        return self.dim / self.n

    @functools.cached_property
    def generator(self) -> BitMatrix:
        if not self.basis:
            return BitMatrix.zeros(0, self.n)
        return BitMatrix(np.array([_eval_array(S, self.m) for S in self.basis], dtype=np.uint8))

    def encode(self, msg: BitVector) -> BitVector:
        if msg.length != self.dim:
            raise ValueError(f"message length {msg.length} != dimension {self.dim}")
        return self.generator.vecmul(msg)

    def contains(self, word: BitVector) -> bool:
        return in_row_space(word, self.generator)

    def __eq__(self, other) -> bool:
        return isinstance(other, RMCode) and (self.m, self.r) == (other.m, other.r)

    def __hash__(self) -> int:
        return hash((self.m, self.r))

    def __repr__(self) -> str:
        return f"RMCode(m={self.m}, r={self.r})"


def encode(code: RMCode, msg: BitVector) -> BitVector:
    return code.encode(msg)


def plotkin_split(c: BitVector) -> tuple[BitVector, BitVector]:
    """Split ``Eval(f)`` into ``(Eval(g), Eval(h))`` with ``f = g + x_m h``."""
    n = c.length
    if n < 2 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two >= 2")
    a = c.to_array().reshape(-1, 2)
    return BitVector(a[:, 0]), BitVector(a[:, 0] ^ a[:, 1])


def plotkin_join(g: BitVector, h: BitVector) -> BitVector:
    if g.length != h.length:
        raise ValueError("halves must have equal length")
    ga = g.to_array()
    return BitVector(np.stack([ga, ga ^ h.to_array()], axis=1).reshape(-1))


def _check_guard(k: int, guard: int) -> None:
    if k > guard:
        raise GuardError(f"dimension {k} exceeds enumeration guard {guard}")


def codeword_chunks(G: BitMatrix, guard: int = ENUMERATION_GUARD, max_table_words: int = 1 << 21) -> Iterator[np.ndarray]:
    """Yield every codeword of the row space of ``G`` as packed word rows.

    Codewords appear in message order (message bit ``j`` selects row ``j``),
    in chunks of ``2^L`` built from a lookup table over the first ``L`` rows.
    """
    k = G.rows
    _check_guard(k, guard)
    rows = G.words
    nw = rows.shape[1] if rows.ndim == 2 else 0
    L = k
    while L > 0 and (1 << L) * max(nw, 1) > max_table_words:
        L -= 1
    table = np.zeros((1, nw), dtype=np.uint64)
    for j in range(L):
        table = np.concatenate([table, table ^ rows[j]], axis=0)
    high = rows[L:]
    for hi in range(1 << (k - L)):
        offset = np.zeros(nw, dtype=np.uint64)
        for j in range(k - L):
            if (hi >> j) & 1:
                offset ^= high[j]
        yield table ^ offset


def all_codewords(code: RMCode | BitMatrix, guard: int = 20) -> np.ndarray:
    """All codewords as an unpacked ``(2^k, n)`` uint8 array, in message order."""
    G = code.generator if isinstance(code, RMCode) else code
    _check_guard(G.rows, guard)
    return np.concatenate([unpack_bits(ch, G.cols) for ch in codeword_chunks(G, guard)], axis=0)


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    dim: int
    counts: dict[int, int]

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def min_weight(self) -> int:
        nz = [w for w, a in self.counts.items() if w > 0 and a > 0]
        return min(nz) if nz else 0

    def is_symmetric(self) -> bool:
        return all(self[w] == self[self.n - w] for w in range(self.n + 1))

    def as_list(self) -> list[int]:
        return [self[w] for w in range(self.n + 1)]


def weight_distribution(code: RMCode | BitMatrix, guard: int = ENUMERATION_GUARD) -> WeightDistribution:
    """Exact weight distribution by exhaustive enumeration of the message space."""
    G = code.generator if isinstance(code, RMCode) else code
    n = G.cols
    hist = np.zeros(n + 1, dtype=np.int64)
    for chunk in codeword_chunks(G, guard):
        w = np.bitwise_count(chunk).sum(axis=1, dtype=np.int64)
        hist += np.bincount(w, minlength=n + 1)
    counts = {int(w): int(a) for w, a in enumerate(hist) if a}
    return WeightDistribution(n=n, dim=G.rows, counts=counts)


def _support(positions, n: int) -> np.ndarray:
    if isinstance(positions, BitVector):
        return positions.support()
    idx = np.asarray(sorted(positions), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError("position out of range")
    return idx


def shorten(code: RMCode | BitMatrix, positions, puncture: bool = False) -> BitMatrix:
    """Basis of the subcode vanishing on ``positions``.

    Returned vectors keep full length unless ``puncture`` is set, in which case
    the (all-zero) shortened coordinates are dropped.
    """
    G = code.generator if isinstance(code, RMCode) else code
    P = _support(positions, G.cols)
    if P.size == 0:
        basis = row_reduce(G)[0].to_array()
    else:
        # message vectors x with x·G[:, P] = 0, mapped back through G
        msgs = nullspace(G.columns(P).transpose()).to_array()
        words = (msgs.astype(np.int64) @ G.to_array().astype(np.int64)) & 1
        basis = row_reduce(BitMatrix(words.reshape(-1, G.cols), cols=G.cols))[0].to_array()
    basis = basis.reshape(-1, G.cols)
    if puncture:
        keep = np.setdiff1d(np.arange(G.cols), P)
        return BitMatrix(basis[:, keep].reshape(-1, keep.size), cols=int(keep.size))
    return BitMatrix(basis, cols=G.cols)


def superset_count(code: RMCode | BitMatrix, g_eval: BitVector) -> int:
    """Number of codewords whose support contains ``supp(g_eval)``.

    Counted as the size of the solution set of ``x·G[:, S] = 1``.
    """
    G = code.generator if isinstance(code, RMCode) else code
    if g_eval.length != G.cols:
        raise ValueError(f"vector length {g_eval.length} != code length {G.cols}")
    S = g_eval.support()
    if S.size == 0:
        return 1 << G.rows
    sol = solve(G.columns(S).transpose(), BitVector.ones(S.size))
    if not sol.consistent:
        return 0
    return 1 << sol.nullspace.rows


__all__ = [
    "ENUMERATION_GUARD",
    "GuardError",
    "RMCode",
    "WeightDistribution",
    "all_codewords",
    "binom_le",
    "codeword_chunks",
    "encode",
    "eval_monomial",
    "lex_point",
    "monomials",
    "plotkin_join",
    "plotkin_split",
    "point_index",
    "shorten",
    "superset_count",
    "weight_distribution",
]
