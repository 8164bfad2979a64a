"""MSB-first bit packing shared by the QLC and Huffman encoders.

The first bit written lands in bit 7 of byte 0; the stream is zero-padded
to a whole byte.
"""

from __future__ import annotations

import numpy as np


def code_bit_matrix(codewords, lengths) -> np.ndarray:
    """Expand codewords into a (256, max_length) matrix of 0/1 bits, MSB first.

    Codewords are Python ints, so lengths beyond 64 bits are fine.
    """
    lengths = [int(n) for n in lengths]
    width = max(max(lengths), 1)
    bits = np.zeros((len(lengths), width), dtype=np.uint8)
    for sym, (code, n) in enumerate(zip(codewords, lengths)):
        for k in range(n):
            bits[sym, k] = (int(code) >> (n - 1 - k)) & 1
    return bits


def pack_codes(symbols: np.ndarray, bit_matrix: np.ndarray, lengths: np.ndarray) -> tuple[bytes, int]:
    """Concatenate the codeword of every symbol; returns (packed bytes, bit count)."""
    if symbols.size == 0:
        return b"", 0
    lens = lengths.astype(np.int64)[symbols]
    ends = np.cumsum(lens)
    starts = ends - lens
    nbits = int(ends[-1])
    bits = np.zeros(nbits, dtype=np.uint8)
    for k in range(int(lens.max())):
        sel = np.flatnonzero(lens > k)
        bits[starts[sel] + k] = bit_matrix[symbols[sel], k]
    return np.packbits(bits).tobytes(), nbits


def bits_from_string(text: str) -> bytes:
    """Pack a string such as ``"100_010"`` MSB-first, zero padded."""
    digits = [int(c) for c in text if c in "01"]
    return np.packbits(np.array(digits, dtype=np.uint8)).tobytes()
