"""Compiled inner loops for the decoders.

Every kernel returns ``(status, symbols_decoded, bit_position)`` and writes
output bytes into a caller-provided array.  Status values are the ``ST_*``
constants; the Python wrappers turn them into exceptions.
"""

import numpy as np
from numba import njit

ST_OK = 0
ST_TRUNCATED = 1
ST_INVALID_CODE = 2
ST_TRAILING = 3


@njit(cache=True, nogil=True)
def _check_padding(buf, nbits, pos):
    rem = nbits - pos
    if rem > 7:
        return ST_TRAILING
    if rem > 0 and (buf[pos >> 3] & ((1 << rem) - 1)) != 0:
        return ST_TRAILING
    return ST_OK


@njit(cache=True, nogil=True)
def qlc_decode_lut(buf, nbits, n, widths, bases, counts, value_of, out):
    """Length-prefixed decode: one 24-bit window per symbol.

    ``buf`` must carry at least two zero bytes past the payload so the
    window never reads out of bounds.
    """
    pos = 0
    for i in range(n):
        if pos + 3 > nbits or i >= out.size:
            return ST_TRUNCATED, i, pos
        byte = pos >> 3
        window = (np.int64(buf[byte]) << 16) | (np.int64(buf[byte + 1]) << 8) | np.int64(buf[byte + 2])
        window = (window << (pos & 7)) & 0xFFFFFF
        area = window >> 21
        width = widths[area]
        end = pos + 3 + width
        if end > nbits:
            return ST_TRUNCATED, i, pos
        suffix = (window >> (21 - width)) & ((1 << width) - 1)
        if suffix >= counts[area]:
            return ST_INVALID_CODE, i, pos
        out[i] = value_of[bases[area] + suffix]
        pos = end
    return _check_padding(buf, nbits, pos), n, pos


@njit(cache=True, nogil=True)
def qlc_decode_bitwise(buf, nbits, n, widths, bases, counts, value_of, out):
    """Reference decoder that pulls one bit at a time."""
    pos = 0
    for i in range(n):
        if i >= out.size:
            return ST_TRUNCATED, i, pos
        area = 0
        for _ in range(3):
            if pos >= nbits:
                return ST_TRUNCATED, i, pos
            area = (area << 1) | ((buf[pos >> 3] >> (7 - (pos & 7))) & 1)
            pos += 1
        suffix = 0
        for _ in range(widths[area]):
            if pos >= nbits:
                return ST_TRUNCATED, i, pos
            suffix = (suffix << 1) | ((buf[pos >> 3] >> (7 - (pos & 7))) & 1)
            pos += 1
        if suffix >= counts[area]:
            return ST_INVALID_CODE, i, pos
        out[i] = value_of[bases[area] + suffix]
    spare = 0
    while pos < nbits:
        if (buf[pos >> 3] >> (7 - (pos & 7))) & 1:
            return ST_TRAILING, n, pos
        spare += 1
        pos += 1
        if spare > 7:
            return ST_TRAILING, n, pos
    return ST_OK, n, pos


@njit(cache=True, nogil=True)
def huffman_decode_tree(buf, nbits, n, children, leaf_symbol, out):
    """Walk the code tree from the root, one edge per input bit.

    ``children[node, bit]`` is the child index or -1; ``leaf_symbol[node]``
    is the decoded byte for leaves and -1 for internal nodes.
    """
    pos = 0
    for i in range(n):
        if i >= out.size:
            return ST_TRUNCATED, i, pos
        node = 0
        while leaf_symbol[node] < 0:
            if pos >= nbits:
                return ST_TRUNCATED, i, pos
            node = children[node, (buf[pos >> 3] >> (7 - (pos & 7))) & 1]
            pos += 1
            if node < 0:
                return ST_INVALID_CODE, i, pos
        out[i] = leaf_symbol[node]
    return _check_padding(buf, nbits, pos), n, pos
