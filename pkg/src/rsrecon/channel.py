"""The K-draw symmetric substitution channel.

Each transmitted symbol is read K times independently; every read keeps the
symbol with probability 1-p and otherwise substitutes one of the other q-1
symbols uniformly.  Sampling is rejection-free: a substituted read draws
u ~ uniform{0..q-2} and outputs index (true + 1 + u) mod q, a bijection onto
the q-1 wrong indices (index arithmetic on the canonical enumeration; the
field structure plays no role in the law).

Randomness is counter-based: a (master_seed, stream) pair keys a Philox
generator, so every draw is a pure function of the pair and simulation
results do not depend on execution order or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelSpec:
    q: int
    K: int
    p: float

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        if self.K < 1:
            raise ValueError(f"number of reads must be >= 1, got {self.K}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"substitution probability must be in [0, 1], got {self.p}")


@dataclass(frozen=True)
class ReadSet:
    """K x n read matrix plus the (master_seed, stream) pair that produced it."""

    reads: np.ndarray
    channel: ChannelSpec
    seed_info: tuple

    @property
    def K(self) -> int:
        return self.reads.shape[0]

    @property
    def n(self) -> int:
        return self.reads.shape[1]


def philox_stream(master_seed: int, stream: int) -> np.random.Generator:
    """Deterministic generator keyed by (master_seed, stream)."""
    master_seed, stream = int(master_seed), int(stream)
    if not (0 <= master_seed < 2**64 and 0 <= stream < 2**64):
        raise ValueError("master_seed and stream must be 64-bit nonnegative integers")
    return np.random.Generator(np.random.Philox(key=np.array([master_seed, stream], dtype=np.uint64)))


def transmit(codeword, ch: ChannelSpec, seed: int, stream: int = 0) -> ReadSet:
    """Produce the K reads of a codeword; fully determined by (seed, stream)."""
    codeword = np.asarray(codeword, dtype=np.int64)
    if codeword.ndim != 1:
        raise ValueError("codeword must be a 1-d symbol array")
    if len(codeword) and (codeword.min() < 0 or codeword.max() >= ch.q):
        raise ValueError("codeword symbols outside the channel alphabet")
    rng = philox_stream(seed, stream)
    n = len(codeword)
    hit = rng.random((ch.K, n)) < ch.p
    shift = rng.integers(0, ch.q - 1, size=(ch.K, n), dtype=np.int64)
    reads = np.where(hit, (codeword[None, :] + 1 + shift) % ch.q, codeword[None, :])
    return ReadSet(reads=reads, channel=ch, seed_info=(int(seed), int(stream)))


def channel_law(ch: ChannelSpec, x: int, y) -> float:
    """P(Y = y | X = x) for a K-tuple y: (1-p)^r * (p/(q-1))^(K-r), r = matches."""
    y = np.asarray(y)
    if y.shape != (ch.K,):
        raise ValueError(f"y must be a length-K tuple, K={ch.K}")
    r = int(np.count_nonzero(y == x))
    return (1.0 - ch.p) ** r * (ch.p / (ch.q - 1)) ** (ch.K - r)
