"""Canonical Huffman baseline.

Lengths come from the classic two-smallest merge with a deterministic
tie-break: nodes are ordered by (weight, smallest byte value contained).
Codewords are then reassigned canonically in (length, symbol) order.  No
length limiting is applied, so ``max_length`` can be large on skewed data.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bitio import code_bit_matrix, pack_codes
from .errors import InvalidCode, MissingCode, TrailingGarbage, TruncatedPayload, ZeroTotal
from .stats import NUM_SYMBOLS, Histogram256, Pmf256, as_byte_array


@dataclass(frozen=True)
class HuffmanCode:
    lengths: tuple[int, ...]
    codewords: tuple[int, ...]  # 0 for absent symbols; check lengths first

    @property
    def present(self) -> list[int]:
        return [s for s, n in enumerate(self.lengths) if n > 0]

    @property
    def min_length(self) -> int:
        return min(n for n in self.lengths if n > 0)

    @property
    def max_length(self) -> int:
        return max(self.lengths)

    @property
    def distinct_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({n for n in self.lengths if n > 0}))

    def kraft_units(self) -> tuple[int, int]:
        """Kraft sum as an exact fraction ``(numerator, 2**max_length)``."""
        top = self.max_length
        return sum(1 << (top - n) for n in self.lengths if n > 0), 1 << top

    def codeword(self, symbol: int) -> str:
        n = self.lengths[symbol]
        if n == 0:
            raise MissingCode(f"symbol {symbol} has no code")
        return format(self.codewords[symbol], f"0{n}b")


def _code_lengths(counts) -> list[int]:
    lengths = [0] * NUM_SYMBOLS
    present = [s for s in range(NUM_SYMBOLS) if counts[s] > 0]
    if len(present) == 1:
        lengths[present[0]] = 1
        return lengths
    # heap entries: (weight, smallest symbol, members)
    heap = [(int(counts[s]), s, [s]) for s in present]
    heapq.heapify(heap)
    while len(heap) > 1:
        w1, s1, m1 = heapq.heappop(heap)
        w2, s2, m2 = heapq.heappop(heap)
        for s in m1:
            lengths[s] += 1
        for s in m2:
            lengths[s] += 1
        heapq.heappush(heap, (w1 + w2, min(s1, s2), m1 + m2))
    return lengths


def canonical_codewords(lengths) -> list[int]:
    codes = [0] * len(lengths)
    code = 0
    prev = 0
    for n, sym in sorted((n, s) for s, n in enumerate(lengths) if n > 0):
        code <<= n - prev
        codes[sym] = code
        code += 1
        prev = n
    return codes


def build_huffman(h: Histogram256) -> HuffmanCode:
    if h.total == 0:
        raise ZeroTotal("cannot build a Huffman code from an empty histogram")
    lengths = _code_lengths(h.counts.tolist())
    return HuffmanCode(tuple(lengths), tuple(canonical_codewords(lengths)))


def huffman_expected_length(c: HuffmanCode, p: Pmf256) -> float:
    lengths = np.array(c.lengths, dtype=np.float64)
    if np.any((p.probs > 0) & (lengths == 0)):
        missing = np.flatnonzero((p.probs > 0) & (lengths == 0)).tolist()
        raise MissingCode(f"symbols {missing[:8]} have probability but no code")
    return math.fsum((p.probs * lengths).tolist())


@dataclass(frozen=True, eq=False)
class _Tables:
    lengths: np.ndarray
    bit_matrix: np.ndarray
    children: np.ndarray
    leaf_symbol: np.ndarray


_TABLE_CACHE: dict[HuffmanCode, _Tables] = {}


def _tables(c: HuffmanCode) -> _Tables:
    cached = _TABLE_CACHE.get(c)
    if cached is not None:
        return cached
    children = [[-1, -1]]
    leaf = [-1]
    for sym in c.present:
        node = 0
        bits = c.codeword(sym)
        for bit in bits:
            b = int(bit)
            if children[node][b] < 0:
                children[node][b] = len(children)
                children.append([-1, -1])
                leaf.append(-1)
            node = children[node][b]
        leaf[node] = sym
    tables = _Tables(
        np.array(c.lengths, dtype=np.int64),
        code_bit_matrix(c.codewords, c.lengths),
        np.array(children, dtype=np.int64),
        np.array(leaf, dtype=np.int64),
    )
    if len(_TABLE_CACHE) > 64:
        _TABLE_CACHE.clear()
    _TABLE_CACHE[c] = tables
    return tables


def huffman_encode(data, c: HuffmanCode) -> tuple[bytes, int]:
    """Pack ``data`` MSB-first; returns (payload bytes, exact bit count)."""
    arr = as_byte_array(data)
    t = _tables(c)
    if arr.size and np.any(t.lengths[arr] == 0):
        missing = sorted(set(arr[t.lengths[arr] == 0].tolist()))
        raise MissingCode(f"input bytes {missing[:8]} have no Huffman code")
    return pack_codes(arr, t.bit_matrix, t.lengths)


def huffman_decode(bits: bytes, c: HuffmanCode, n: int) -> bytes:
    """Decode ``n`` symbols by walking the code tree bit by bit.

    At most 7 zero padding bits may follow the last codeword.
    """
    t = _tables(c)
    buf = np.frombuffer(bytes(bits), dtype=np.uint8)
    nbits = 8 * buf.size
    capacity = min(n, nbits)
    out = np.empty(capacity, dtype=np.uint8)
    status, index, pos = _kernels.huffman_decode_tree(
        buf, nbits, min(n, capacity + 1), t.children, t.leaf_symbol, out
    )
    if status == _kernels.ST_TRUNCATED:
        raise TruncatedPayload(f"bitstream ends inside symbol {index} of {n}")
    if status == _kernels.ST_INVALID_CODE:
        raise InvalidCode(f"symbol {index}: bit path leaves the code tree (bit {pos})")
    if status == _kernels.ST_TRAILING:
        raise TrailingGarbage(f"unexpected bits after symbol {n} (bit {pos})")
    return out.tobytes()
