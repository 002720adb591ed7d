"""Binary memoryless symmetric channels in multiplicative-noise form.

Input bit ``x`` is sent as ``(-1)^x`` and multiplied by noise ``Z``:

* BEC(eps): ``Z = 0`` (erasure) with probability eps, else ``Z = 1``
* BSC(p):   ``Z = -1`` with probability p, else ``Z = 1``
* BI-AWGN(sigma): ``Z ~ N(1, sigma^2)``

Randomness comes from :class:`RngStream`, keyed by a master seed and a stream
index so that trial ``t`` of a run always sees the same samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2 import BitVector

_HERMITE_NODES = 160


@dataclass(frozen=True)
class RngStream:
    seed: int
    index: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed & 0xFFFFFFFFFFFFFFFF, spawn_key=(self.index,))
        return np.random.Generator(np.random.PCG64(seq))


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


class ChannelModel:
    """Base class; subclasses define the noise law and per-symbol likelihoods."""

    name = "channel"

    def noise(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def log_likelihoods(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-symbol ``(log P(y|0), log P(y|1))``, up to a common constant."""
        raise NotImplementedError

    def capacity(self) -> float:
        raise NotImplementedError

    @property
    def parameter(self) -> float:
        raise NotImplementedError

    def transmit(self, x, rng: RngStream | np.random.Generator) -> np.ndarray:
        bits = x.to_array() if isinstance(x, BitVector) else np.asarray(x, dtype=np.uint8)
        gen = rng.generator() if isinstance(rng, RngStream) else rng
        sign = 1 - 2 * bits.astype(np.int8)
        return sign * self.noise(bits.size, gen)


@dataclass(frozen=True)
class BEC(ChannelModel):
    epsilon: float
    name = "bec"

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("erasure probability must lie in [0, 1]")

    @property
    def parameter(self) -> float:
        return self.epsilon

    def noise(self, n, rng):
        return (rng.random(n) >= self.epsilon).astype(np.int8)

    def log_likelihoods(self, y):
        y = np.asarray(y)
        with np.errstate(divide="ignore"):
            le, lk = np.log(self.epsilon), np.log1p(-self.epsilon)
        l0 = np.where(y == 0, le, np.where(y > 0, lk, -np.inf))
        l1 = np.where(y == 0, le, np.where(y < 0, lk, -np.inf))
        return l0, l1

    def capacity(self):
        return 1.0 - self.epsilon


@dataclass(frozen=True)
class BSC(ChannelModel):
    p: float
    name = "bsc"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("crossover probability must lie in [0, 1]")

    @property
    def parameter(self) -> float:
        return self.p

    def noise(self, n, rng):
        return np.where(rng.random(n) < self.p, -1, 1).astype(np.int8)

    def log_likelihoods(self, y):
        y = np.asarray(y)
        with np.errstate(divide="ignore"):
            lp, lq = np.log(self.p), np.log1p(-self.p)
        return np.where(y > 0, lq, lp), np.where(y < 0, lq, lp)

    def capacity(self):
        return 1.0 - binary_entropy(self.p)


@dataclass(frozen=True)
class BIAWGN(ChannelModel):
    sigma: float
    name = "biawgn"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    @property
    def parameter(self) -> float:
        return self.sigma

    def noise(self, n, rng):
        return 1.0 + self.sigma * rng.standard_normal(n)

    def log_likelihoods(self, y):
        y = np.asarray(y, dtype=float)
        s2 = 2 * self.sigma**2
        return -((y - 1.0) ** 2) / s2, -((y + 1.0) ** 2) / s2

    def capacity(self):
        """``1 - E[log2(1 + exp(-2Y/sigma^2))]`` with ``Y ~ N(1, sigma^2)``.

        Evaluated with fixed probabilists' Gauss-Hermite quadrature
        (160 nodes), accurate to better than 1e-6 for sigma in [0.1, 10].
        """
        t, w = np.polynomial.hermite_e.hermegauss(_HERMITE_NODES)
        y = 1.0 + self.sigma * t
        loss = np.logaddexp(0.0, -2.0 * y / self.sigma**2) / math.log(2)
        return float(1.0 - (w @ loss) / math.sqrt(2 * math.pi))


def transmit(x, ch: ChannelModel, rng: RngStream | np.random.Generator) -> np.ndarray:
    return ch.transmit(x, rng)


def capacity(ch: ChannelModel) -> float:
    return ch.capacity()


__all__ = ["BEC", "BIAWGN", "BSC", "ChannelModel", "RngStream", "binary_entropy", "capacity", "transmit"]
