"""Bit-MAP decoding and Monte Carlo estimation of the bit-MAP error.

Decoders assume a uniform prior over a linear code (the full parent RM code
when the transmitted words come from a constrained subcode). On the BEC the
posterior of every coordinate is 0, 1 or exactly 1/2, which
:class:`BECBitMAP` computes by linear algebra; :func:`exhaustive_bitmap` is
the brute-force Bayes oracle for any channel on small codes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channels import BEC, ChannelModel, RngStream
from .gf2 import AMBIGUOUS, BitMatrix, BitVector, ErasureResolver, InconsistentError
from .rm_code import RMCode, _check_guard, all_codewords

#: Dimension limit for the exhaustive Bayes decoder.
EXHAUSTIVE_GUARD = 20


@dataclass(frozen=True)
class BitPosterior:
    """``P(X_i = 1 | y)`` per coordinate, with the argmax and tie flags."""

    p1: np.ndarray

    @property
    def estimate(self) -> np.ndarray:
        return (self.p1 > 0.5).astype(np.uint8)

    @property
    def tie(self) -> np.ndarray:
        return self.p1 == 0.5

    @property
    def max_posterior(self) -> np.ndarray:
        return np.maximum(self.p1, 1.0 - self.p1)

    def error(self) -> float:
        """Per-realisation bit-MAP error ``1 - mean_i max(P(0|y), P(1|y))``."""
        return float(1.0 - self.max_posterior.mean())

    def __eq__(self, other) -> bool:
        return isinstance(other, BitPosterior) and np.array_equal(self.p1, other.p1)

    __hash__ = None


def _generator_of(code) -> BitMatrix:
    return code.generator if isinstance(code, RMCode) else code


@dataclass
class BECBitMAP:
    """Analytic bit-MAP decoder for the BEC over the row space of ``G``."""

    generator: BitMatrix
    _resolver: ErasureResolver = field(init=False, repr=False)

    def __post_init__(self):
        self._resolver = ErasureResolver(self.generator)

    @classmethod
    def for_code(cls, code) -> "BECBitMAP":
        return cls(_generator_of(code))

    def status(self, y) -> np.ndarray:
        y = np.asarray(y)
        return self._resolver.resolve(y == 0, (y < 0).astype(np.uint8))

    def __call__(self, y) -> BitPosterior:
        st = self.status(y)
        return BitPosterior(np.where(st == AMBIGUOUS, 0.5, st.astype(float)))

    def undetermined_fraction(self, y) -> float:
        return float((self.status(y) == AMBIGUOUS).mean())


def bec_bitmap(G: BitMatrix, y) -> BitPosterior:
    """Bit-MAP posteriors for a BEC output ``y`` (0 marks an erasure)."""
    return BECBitMAP(G)(y)


def exhaustive_bitmap(code, ch: ChannelModel, y, guard: int = EXHAUSTIVE_GUARD) -> BitPosterior:
    """Direct Bayes posterior, enumerating every codeword."""
    G = _generator_of(code)
    _check_guard(G.rows, guard)
    words = all_codewords(G, guard=guard).astype(bool)
    return _posterior_from_words(words, ch, y)


def _posterior_from_words(words: np.ndarray, ch: ChannelModel, y) -> BitPosterior:
    l0, l1 = ch.log_likelihoods(np.asarray(y))
    ll = np.where(words, l1, l0).sum(axis=1)
    top = ll.max()
    if not np.isfinite(top):
        raise InconsistentError("every codeword has zero likelihood")
    w = np.exp(ll - top)
    p1 = (w @ words) / w.sum()
    return BitPosterior(p1)


@dataclass
class ExhaustiveBitMAP:
    """Reusable exhaustive decoder; the codeword list is built once."""

    generator: BitMatrix
    channel: ChannelModel
    guard: int = EXHAUSTIVE_GUARD
    _words: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_guard(self.generator.rows, self.guard)
        self._words = all_codewords(self.generator, guard=self.guard).astype(bool)

    def __call__(self, y) -> BitPosterior:
        return _posterior_from_words(self._words, self.channel, y)


@dataclass(frozen=True)
class SimulationResult:
    trials: int
    pb: float
    std_error: float
    undetermined: np.ndarray | None = None


def estimate_pb(
    encoder: Callable[[BitVector], BitVector],
    message_bits: int,
    ch: ChannelModel,
    decoder: Callable[[np.ndarray], BitPosterior],
    trials: int,
    seed: int,
    keep_trace: bool = False,
) -> SimulationResult:
    """Monte Carlo estimate of the bit-MAP error with uniform random messages.

    Trial ``t`` draws its message and channel noise from ``RngStream(seed, t)``,
    so results do not depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    errs = np.empty(trials)
    trace = np.empty(trials) if keep_trace else None
    for t in range(trials):
        gen = RngStream(seed, t).generator()
        msg = BitVector(gen.integers(0, 2, size=message_bits, dtype=np.uint8))
        y = ch.transmit(encoder(msg), gen)
        post = decoder(y)
        errs[t] = post.error()
        if trace is not None:
            trace[t] = float(post.tie.mean())
    pb = float(errs.mean())
    se = float(errs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimulationResult(trials, pb, se, trace)


def subcode_decoder(spec, ch: ChannelModel, guard: int = EXHAUSTIVE_GUARD):
    """Bit-MAP decoder with a uniform prior over the full parent code of ``spec``."""
    G = spec.parent.generator
    if isinstance(ch, BEC):
        return BECBitMAP(G)
    return ExhaustiveBitMAP(G, ch, guard)


__all__ = [
    "BECBitMAP",
    "BitPosterior",
    "EXHAUSTIVE_GUARD",
    "ExhaustiveBitMAP",
    "SimulationResult",
    "bec_bitmap",
    "estimate_pb",
    "exhaustive_bitmap",
    "subcode_decoder",
]
