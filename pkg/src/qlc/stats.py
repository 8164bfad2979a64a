"""Symbol histograms, probability mass functions and entropy metrics.

All distributions here are over the 256 byte values.  Histograms keep raw
integer counts so that code-length sums can be evaluated exactly; PMFs are
plain float64 vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroTotal

NUM_SYMBOLS = 256
SYMBOL_BITS = 8


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Histogram256:
    counts: np.ndarray
    total: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (NUM_SYMBOLS,):
            raise ValueError(f"expected 256 counts, got shape {counts.shape}")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        if int(counts.sum()) != self.total:
            raise ValueError("total does not match the sum of counts")
        object.__setattr__(self, "counts", _frozen(counts.copy()))

    @classmethod
    def from_counts(cls, counts) -> "Histogram256":
        counts = np.asarray(counts, dtype=np.int64)
        return cls(counts, int(counts.sum()))

    def __eq__(self, other):
        if not isinstance(other, Histogram256):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.counts, other.counts)

    @property
    def support(self) -> int:
        """Number of byte values that occur at least once."""
        return int(np.count_nonzero(self.counts))


@dataclass(frozen=True, eq=False)
class Pmf256:
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (NUM_SYMBOLS,):
            raise ValueError(f"expected 256 probabilities, got shape {probs.shape}")
        if not np.all((probs >= 0.0) & (probs <= 1.0)):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(math.fsum(probs.tolist()) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")
        object.__setattr__(self, "probs", _frozen(probs.copy()))

    @classmethod
    def uniform(cls) -> "Pmf256":
        return cls(np.full(NUM_SYMBOLS, 1.0 / NUM_SYMBOLS))

    @classmethod
    def point_mass(cls, symbol: int) -> "Pmf256":
        probs = np.zeros(NUM_SYMBOLS)
        probs[symbol] = 1.0
        return cls(probs)


@dataclass(frozen=True)
class EntropyReport:
    entropy_bits: float
    ideal_compressibility: float


def as_byte_array(data) -> np.ndarray:
    """View bytes-like input (or a list of ints) as a flat uint8 array."""
    if isinstance(data, np.ndarray):
        return data.astype(np.uint8, copy=False).ravel()
    if isinstance(data, (bytes, bytearray, memoryview)):
        return np.frombuffer(data, dtype=np.uint8)
    return np.frombuffer(bytes(data), dtype=np.uint8)


def build_histogram(data) -> Histogram256:
    """Count occurrences of every byte value in ``data``."""
    arr = as_byte_array(data)
    counts = np.bincount(arr, minlength=NUM_SYMBOLS)
    return Histogram256(counts.astype(np.int64), int(arr.size))


def to_pmf(h: Histogram256) -> Pmf256:
    if h.total == 0:
        raise ZeroTotal("histogram is empty; supply data or use a preset scheme")
    return Pmf256(h.counts / h.total)


def compressibility(bits_per_symbol: float) -> float:
    """Fractional size reduction against raw 8-bit symbols (negative on expansion)."""
    return (SYMBOL_BITS - bits_per_symbol) / SYMBOL_BITS


def shannon_entropy(p: Pmf256) -> EntropyReport:
    probs = p.probs[p.probs > 0]
    h = -math.fsum((probs * np.log2(probs)).tolist())
    # rounding can leave a few ulps outside the analytic range
    h = min(max(h, 0.0), float(SYMBOL_BITS))
    return EntropyReport(h, compressibility(h))


def rank_symbols(p: Pmf256) -> list[int]:
    """Byte values by descending probability; ties go to the smaller byte value."""
    order = np.lexsort((np.arange(NUM_SYMBOLS), -p.probs))
    return order.tolist()
