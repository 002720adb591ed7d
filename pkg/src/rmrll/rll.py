"""Run-length-limited constraints: membership, counting, noiseless capacity.

A ``(d, k)`` constraint asks for at least ``d`` zeros between successive ones
and no run of more than ``k`` zeros. The ``d`` part only binds between ones
(leading and trailing zeros are free); a finite ``k`` binds every zero run,
including the leading and trailing ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2 import BitVector


@dataclass(frozen=True)
class RLLConstraint:
    d: int = 0
    k: float = math.inf

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be non-negative")
        if self.k < self.d:
            raise ValueError("need d <= k")
        if self.k != math.inf and int(self.k) != self.k:
            raise ValueError("k must be an integer or infinity")

    @property
    def unbounded(self) -> bool:
        return self.k == math.inf

    def __str__(self) -> str:
        k = "inf" if self.unbounded else str(int(self.k))
        return f"({self.d},{k})"


def _as_array(v) -> np.ndarray:
    if isinstance(v, BitVector):
        return v.to_array()
    return np.asarray(v, dtype=np.uint8)


def satisfies(v, c: RLLConstraint) -> bool:
    x = _as_array(v)
    ones = np.flatnonzero(x)
    if c.d > 0 and ones.size > 1 and (np.diff(ones) - 1 < c.d).any():
        return False
    if not c.unbounded:
        # zero runs are the gaps between consecutive ones, padded with both ends
        bounds = np.concatenate([[-1], ones, [x.size]])
        if (np.diff(bounds) - 1 > c.k).any():
            return False
    return True


def satisfies_batch(words: np.ndarray, c: RLLConstraint) -> np.ndarray:
    """Vectorised :func:`satisfies` over the rows of a ``(N, n)`` 0/1 array."""
    X = np.asarray(words, dtype=bool)
    N, n = X.shape
    ok = np.ones(N, dtype=bool)
    for s in range(1, min(c.d, n - 1) + 1):
        ok &= ~(X[:, :-s] & X[:, s:]).any(axis=1)
    if not c.unbounded and n > c.k:
        k = int(c.k)
        # a window of k+1 consecutive zeros anywhere is a violation
        csum = np.concatenate([np.zeros((N, 1), dtype=np.int64), np.cumsum(X, axis=1)], axis=1)
        window = csum[:, k + 1:] - csum[:, : n - k]
        ok &= ~(window == 0).any(axis=1)
    return ok


def complement(v: BitVector) -> BitVector:
    return v.complement()


def count_sequences(n: int, c: RLLConstraint) -> int:
    """Number of length-``n`` sequences satisfying ``c`` (exact).

    Dynamic programme over the state graph: the state is the current zero-run
    length (capped at ``d`` when ``k`` is infinite) together with whether a one
    has been emitted yet.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    cap = c.d if c.unbounded else int(c.k)
    # states[(run, seen_one)] -> count
    states = {(0, False): 1}
    for _ in range(n):
        nxt: dict[tuple[int, bool], int] = {}
        for (run, seen), cnt in states.items():
            if c.unbounded:
                r0 = min(run + 1, cap)
                nxt[(r0, seen)] = nxt.get((r0, seen), 0) + cnt
            elif run + 1 <= cap:
                nxt[(run + 1, seen)] = nxt.get((run + 1, seen), 0) + cnt
            if not seen or run >= c.d:
                nxt[(0, True)] = nxt.get((0, True), 0) + cnt
        states = nxt
    return sum(states.values())


def count_sequences_recurrence(n: int, d: int) -> int:
    """``(d, inf)`` count via ``T(n) = T(n-1) + T(n-d-1)``, ``T(n) = n+1`` for ``n <= d``."""
    T = [i + 1 for i in range(d + 1)]
    if n <= d:
        return T[n]
    for i in range(d + 1, n + 1):
        T.append(T[i - 1] + T[i - d - 1])
    return T[n]


def _log2_int(x: int) -> float:
    shift = max(x.bit_length() - 60, 0)
    return math.log2(x >> shift) + shift


def growth_rate(n: int, c: RLLConstraint) -> float:
    """``log2(count_sequences(n, c)) / n``."""
    if c.unbounded:
        cnt = count_sequences_recurrence(n, c.d)
    else:
        cnt = count_sequences(n, c)
    return _log2_int(cnt) / n


def noiseless_capacity(c: RLLConstraint, tol: float = 1e-12, max_iter: int = 200) -> float:
    """``log2`` of the spectral radius of the constraint graph.

    The radius is the root in ``[1, 2]`` of ``sum_{i=d+1}^{k+1} x^-i = 1``,
    which for ``k = inf`` reads ``x^(d+1) = x^d + 1``; found by bisection.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = c.d
    if c.unbounded:
        if d == 0:
            return 1.0

        def f(x):
            return x ** (d + 1) - x**d - 1.0
    else:
        k = int(c.k)

        def f(x):
            return 1.0 - sum(x ** (-i) for i in range(d + 1, k + 2))

    lo, hi = 1.0, 2.0
    # f is increasing in x on [1, 2] in both forms
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * math.log(2) * lo:
            return math.log2(0.5 * (lo + hi))
    raise RuntimeError("bisection did not converge")


__all__ = [
    "RLLConstraint",
    "complement",
    "count_sequences",
    "count_sequences_recurrence",
    "growth_rate",
    "noiseless_capacity",
    "satisfies",
    "satisfies_batch",
]
