"""Rate bounds for RLL subcodes of Reed-Muller codes.

Closed forms (achievable rate, the (1, inf) upper bound and its crossover
point) plus finite-m evaluators for the counting argument behind the upper
bound. Quantities of size ``2^(2^m)`` are carried as base-2 logarithms and
every asymptotic ``2^{o(n)}`` slack factor is taken to be 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector, rank
from .rll import RLLConstraint
from .rm_code import RMCode, all_codewords, binom_le, superset_count, weight_distribution
from .subcode import largest_rll_subcode_bruteforce, q_inverse, rate_degree, shift_for

DEFAULT_DELTA = 0.1


def achievable_rate(R: float, d: int) -> float:
    """Rate of the explicit (d, inf) subcodes: ``R / 2^ceil(log2(d+1))``."""
    return R / (1 << shift_for(d))


def _log_inv(R: float) -> float:
    return -math.log1p(-R)


def rll_rate_upper_bound(R: float) -> float:
    """Upper bound on the (1, inf) subcode rate of the rate-R RM sequence."""
    if not 0.0 < R < 1.0:
        raise ValueError("R must lie in (0, 1)")
    return min(3 * R / 8 + 0.5 * _log_inv(R), R)


def r_star(tol: float = 1e-12, max_iter: int = 200) -> float:
    """Crossover rate solving ``ln(1/(1-R)) = 5R/4`` on (0.01, 0.99)."""
    if tol <= 0:
        raise ValueError("tol must be positive")

    def f(R):
        return _log_inv(R) - 1.25 * R

    lo, hi = 0.01, 0.99
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            return 0.5 * (lo + hi)
    raise RuntimeError("bisection did not converge")


def coset_baseline(C0: float, C: float) -> float:
    """Rate ``max(C0 + C - 1, 0)`` guaranteed by constrained subcodes of cosets."""
    return max(C0 + C - 1.0, 0.0)


@dataclass(frozen=True)
class BinomialTail:
    m: int
    t: int
    r_m: int
    exact: Fraction
    R: float

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def deviation(self) -> float:
        return abs(self.value - self.R)


def binomial_tail(m: int, t: int, R: float) -> BinomialTail:
    """``binom(m-t, <= r_m) / 2^(m-t)``, i.e. ``P(Bin(m-t, 1/2) <= r_m)``."""
    if not m > t >= 0:
        raise ValueError("need m > t >= 0")
    r = rate_degree(m, R)
    return BinomialTail(m, t, r, Fraction(binom_le(m - t, r), 1 << (m - t)), R)


def degree_drift_bound(t: int, R: float) -> float:
    """Bound on ``|r_m - r_{m-t}|``: ``t/2 + sqrt(t)/2 |Q^-1(1-R)| + 1``."""
    return t / 2 + math.sqrt(t) / 2 * abs(q_inverse(1.0 - R)) + 1


def tail_sandwich(m: int, t: int, R: float) -> tuple[Fraction, Fraction, Fraction]:
    """``(lower, value, upper)`` bracketing ``P(S_{m-t} <= r_m)``.

    The brackets shift the threshold ``r_{m-t}`` by the drift bound ``nu``.
    """
    nu = degree_drift_bound(t, R)
    r_shift = rate_degree(m - t, R) if m - t >= 1 else 0
    n = m - t
    lo = Fraction(binom_le(n, math.floor(r_shift - nu)), 1 << n)
    hi = Fraction(binom_le(n, math.floor(r_shift + nu)), 1 << n)
    return lo, binomial_tail(m, t, R).exact, hi


@dataclass(frozen=True)
class ShorteningRankReport:
    m: int
    r: int
    u: int
    samples: int
    threshold: int
    ranks: np.ndarray

    @property
    def passed(self) -> bool:
        return bool((self.ranks > self.threshold).all())

    @property
    def min_margin(self) -> int:
        return int(self.ranks.min() - self.threshold)


def shortening_rank_check(m: int, r: int, u: int, samples: int, rng: np.random.Generator) -> ShorteningRankReport:
    """Rank of random ``2^(m-u)``-column restrictions of the RM(m, r) generator.

    Checks ``rank(G[V]) > binom(m-u, <= r)`` on uniformly random column sets.
    """
    if u < 1 or u > m:
        raise ValueError("need 1 <= u <= m")
    if m > 12:
        raise ValueError("m too large for repeated rank computations")
    G = RMCode(m, r).generator
    n, size = 1 << m, 1 << (m - u)
    Ga = G.to_array()
    ranks = np.empty(samples, dtype=np.int64)
    for s in range(samples):
        V = np.sort(rng.choice(n, size=size, replace=False))
        ranks[s] = rank(BitMatrix(Ga[:, V]))
    return ShorteningRankReport(m, r, u, samples, binom_le(m - u, r), ranks)


def weight_growth_bound(w: int, R: float) -> float:
    """``log2`` of the weight-distribution envelope ``2^{2 ln(1/(1-R)) w}``."""
    return 2.0 * _log_inv(R) * w


def weight_growth_table(code: RMCode) -> list[dict]:
    """Compare ``log2 A(w)`` with the envelope at the code's own rate."""
    wd = weight_distribution(code)
    rows = []
    for w, a in sorted(wd.counts.items()):
        bound = weight_growth_bound(w, code.rate) if code.rate < 1 else math.inf
        la = math.log2(a)
        rows.append({"w": w, "A": a, "log2_A": la, "log2_bound": bound, "slack": bound - la})
    return rows


def _log2_sum(values: Sequence[float]) -> float:
    vals = [v for v in values if v != -math.inf]
    if not vals:
        return -math.inf
    top = max(vals)
    return top + math.log2(sum(2.0 ** (v - top) for v in vals))


@dataclass(frozen=True)
class BoundEvaluation:
    """Log2 values of the upper-bound chain at a single ``(m, R, delta)``.

    ``log2_beta_head``/``log2_beta_tail`` split the beta sum at ``t_m``.
    """

    m: int
    R: float
    delta: float
    r_m: int
    t_m: int
    log2_M: dict[int, float]
    log2_B: dict[int, float]
    log2_alpha: float
    log2_beta: float
    log2_beta_head: float
    log2_beta_tail: float
    log2_theta: float
    log2_eta: float
    terms: dict[int, float] = field(default_factory=dict)

    @property
    def rate_bound(self) -> float:
        """``(binom(m-1, <= r_m) + log2(alpha + beta)) / 2^m``."""
        return (binom_le(self.m - 1, self.r_m) + _log2_sum([self.log2_alpha, self.log2_beta])) / 2.0**self.m

    @property
    def relaxed_rate_bound(self) -> float:
        """Same with ``alpha, beta`` replaced by ``eta, theta``."""
        return (binom_le(self.m - 1, self.r_m) + _log2_sum([self.log2_eta, self.log2_theta])) / 2.0**self.m

    @property
    def beta_below_theta(self) -> bool:
        return self.log2_beta <= self.log2_theta

    @property
    def tail_ratio(self) -> float:
        """Largest tail exponent relative to ``2^m`` (shrinks as m grows)."""
        tail = [v for i, v in self.terms.items() if i > self.t_m]
        return max(tail) / 2.0**self.m if tail else -math.inf


def upper_bound_chain(m: int, R: float, delta: float = DEFAULT_DELTA, us: Sequence[int] | None = None) -> BoundEvaluation:
    if m < 4:
        raise ValueError("need m >= 4")
    if not 0.0 < R < 1.0 or not 0.0 < delta < 1.0:
        raise ValueError("R and delta must lie in (0, 1)")
    r = rate_degree(m, R)
    L = _log_inv(R)
    t_m = math.floor(round(m ** (1 / 3), 12))
    top = binom_le(m - 1, r)
    if us is None:
        us = range(0, m)
    log2_M = {u: float(top - binom_le(m - 1 - u, r)) for u in us}
    log2_B = {i: 2.0 * L * 2.0 ** (m - 1 - i) for i in range(1, r)}
    terms = {i: log2_B[i] - binom_le(m - 2 - i, r) for i in range(1, r)}
    head = _log2_sum([v for i, v in terms.items() if i <= t_m])
    tail = _log2_sum([v for i, v in terms.items() if i > t_m])
    return BoundEvaluation(
        m=m,
        R=R,
        delta=delta,
        r_m=r,
        t_m=t_m,
        log2_M=log2_M,
        log2_B=log2_B,
        log2_alpha=binom_le(m - 2, r) - 1.0,
        log2_beta=_log2_sum(list(terms.values())),
        log2_beta_head=head,
        log2_beta_tail=tail,
        log2_theta=2.0 ** (m - 3) * (4.0 * L - R * (1.0 - delta)),
        log2_eta=(1.0 + delta) * 2.0 ** (m - 2) * R,
        terms=terms,
    )


@dataclass(frozen=True)
class CountingChain:
    """Exact counts along the upper-bound argument for one small code.

    All fields are integers (or exact for ``half_total``); ``levels`` lists
    them in the order the argument bounds each by the next.
    """

    m: int
    r: int
    largest_subcode: int
    superset_sum: int
    by_weight: int
    folded: Fraction
    pascal: Fraction
    dyadic: Fraction

    @property
    def levels(self) -> list[tuple[str, Fraction]]:
        return [
            ("largest_subcode", Fraction(self.largest_subcode)),
            ("superset_sum", Fraction(self.superset_sum)),
            ("by_weight", Fraction(self.by_weight)),
            ("folded", self.folded),
            ("pascal", self.pascal),
            ("dyadic", self.dyadic),
        ]

    def is_monotone(self) -> bool:
        vals = [v for _, v in self.levels]
        return all(a <= b for a, b in zip(vals, vals[1:]))


def _u_of(w: int, half_len_log: int) -> int:
    """Smallest ``u >= 0`` with ``w >= 2^(half_len_log - u)``."""
    u = 0
    while w < (1 << (half_len_log - u)):
        u += 1
    return u


def counting_chain(m: int, r: int) -> CountingChain:
    """Evaluate every level of the upper-bound chain exactly for RM(m, r).

    ``g`` ranges over RM(m-1, r); ``N(g)`` counts codewords of RM(m-1, r)
    containing ``supp(g)``. The zero codeword ``g = 0`` (with
    ``N = 2^dim``) is carried explicitly at every level.
    """
    if m < 3 or r < 1:
        raise ValueError("need m >= 3 and r >= 1")
    code = RMCode(m, r)
    half = RMCode(m - 1, r)
    k = half.dim
    largest = largest_rll_subcode_bruteforce(code, RLLConstraint(1)).count
    words = all_codewords(half)
    G = half.generator
    superset_sum = sum(superset_count(G, BitVector(w)) for w in words)
    wd = weight_distribution(half)
    M = {u: 1 << (k - binom_le(m - 1 - u, r)) for u in range(m)}
    zero_term = 1 << k
    n_half_log = m - 1
    by_weight = zero_term + sum(a * M[_u_of(w, n_half_log)] for w, a in wd.counts.items() if w > 0)
    quarter = 1 << (m - 2)
    low = sum(a * M[_u_of(w, n_half_log)] for w, a in wd.counts.items() if 0 < w <= quarter)
    folded = zero_term + low + Fraction(1, 2) * (1 << k) * M[1]
    pascal = zero_term + low + Fraction(1, 2) * (1 << (k + binom_le(m - 2, r)))
    dyadic_low = 0
    for i in range(1, r):
        lo_w, hi_w = 1 << (m - 2 - i), 1 << (m - 1 - i)
        A_band = sum(a for w, a in wd.counts.items() if lo_w <= w <= hi_w)
        dyadic_low += A_band * (1 << (k - binom_le(m - 2 - i, r)))
    dyadic = zero_term + dyadic_low + Fraction(1, 2) * (1 << (k + binom_le(m - 2, r)))
    return CountingChain(m, r, largest, superset_sum, by_weight, folded, pascal, dyadic)


__all__ = [
    "BinomialTail",
    "BoundEvaluation",
    "CountingChain",
    "DEFAULT_DELTA",
    "ShorteningRankReport",
    "achievable_rate",
    "binomial_tail",
    "coset_baseline",
    "counting_chain",
    "degree_drift_bound",
    "r_star",
    "rll_rate_upper_bound",
    "shortening_rank_check",
    "tail_sandwich",
    "upper_bound_chain",
    "weight_growth_bound",
    "weight_growth_table",
]
