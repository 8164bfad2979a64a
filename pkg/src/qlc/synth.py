"""Seeded synthetic corpora shaped like FP8 (e4m3) tensor data.

e4m3 here is the all-finite variant: 1 sign bit, 4 exponent bits with bias
7, 3 mantissa bits, exponent field 0 is subnormal, and no encoding is
reserved for NaN/Inf.  Values are quantized with round-to-nearest-even after
scaling each block of 32 so its largest magnitude maps to 448.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

E4M3_BIAS = 7
E4M3_MANTISSA_BITS = 3
E4M3_SCALE_TARGET = 448.0
E4M3_MIN_NORMAL_EXP = 1 - E4M3_BIAS  # -6
BLOCK_SIZE = 32

KINDS = ("gaussian-e4m3", "spike-zero", "uniform", "zipf")


@dataclass(frozen=True)
class SyntheticSpec:
    kind: str
    size: int
    seed: int = 0
    sigma: float = 1.0
    p0: float = 0.5
    exponent: float = 1.1
    block_size: int = BLOCK_SIZE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}; choose from {KINDS}")
        if self.size <= 0:
            raise ValueError("size must be positive")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def e4m3_decode(codes) -> np.ndarray:
    """Value of each e4m3 bit pattern (all 256 are finite)."""
    codes = np.asarray(codes, dtype=np.int64)
    sign = np.where(codes & 0x80, -1.0, 1.0)
    exp = (codes >> E4M3_MANTISSA_BITS) & 0xF
    man = codes & 0x7
    normal = np.ldexp(1.0 + man / 8.0, exp - E4M3_BIAS)
    subnormal = np.ldexp(man / 8.0, E4M3_MIN_NORMAL_EXP)
    return sign * np.where(exp == 0, subnormal, normal)


def e4m3_encode(values) -> np.ndarray:
    """Round float values to the nearest e4m3 pattern (ties to even), saturating."""
    x = np.asarray(values, dtype=np.float64)
    mag = np.minimum(np.abs(x), float(e4m3_decode(0x7F)))
    _, exp2 = np.frexp(mag)
    # exponent of the leading bit, floored at the subnormal range
    lead = np.maximum(exp2 - 1, E4M3_MIN_NORMAL_EXP)
    ulp_exp = lead - E4M3_MANTISSA_BITS
    steps = np.rint(np.ldexp(mag, -ulp_exp)).astype(np.int64)  # rint is half-to-even
    # steps lies in [0, 16]; 16 means the value rounded up into the next binade
    carry = steps >= 16
    steps = np.where(carry, 8, steps)
    lead = np.where(carry, lead + 1, lead)
    exp_field = np.where(steps >= 8, lead + E4M3_BIAS, 0)
    man = np.where(steps >= 8, steps - 8, steps)
    code = (exp_field << E4M3_MANTISSA_BITS) | man
    code = np.minimum(code, 0x7F)
    return (code | np.where(np.signbit(x), 0x80, 0)).astype(np.uint8)


def _gaussian_e4m3(rng: np.random.Generator, size: int, sigma: float, block: int) -> np.ndarray:
    nblocks = -(-size // block)
    x = rng.normal(0.0, sigma, size=(nblocks, block))
    peak = np.abs(x).max(axis=1, keepdims=True)
    peak[peak == 0] = 1.0
    return e4m3_encode(x * (E4M3_SCALE_TARGET / peak)).ravel()[:size]


def generate(spec: SyntheticSpec) -> bytes:
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "gaussian-e4m3":
        out = _gaussian_e4m3(rng, spec.size, spec.sigma, spec.block_size)
    elif spec.kind == "spike-zero":
        out = _gaussian_e4m3(rng, spec.size, spec.sigma, spec.block_size)
        out[rng.random(spec.size) < spec.p0] = 0
    elif spec.kind == "uniform":
        out = rng.integers(0, 256, size=spec.size, dtype=np.uint8)
    else:
        weights = 1.0 / np.arange(1, 257) ** spec.exponent
        symbols = rng.permutation(256).astype(np.uint8)
        out = symbols[rng.choice(256, size=spec.size, p=weights / weights.sum())]
    return out.astype(np.uint8).tobytes()
