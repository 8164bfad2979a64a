"""QLC encoder/decoder tables, bitstream coding and the QLC1 container.

Container layout (all offsets in bytes)::

    0    magic            b"QLC1"
    4    version          0x01
    5    scheme           8 bytes, symbol_bits of areas 0..7
    13   mapping          256 bytes, rank -> original byte value
    269  payload_length   uint64 little-endian, number of original symbols
    277  payload          codewords packed MSB-first, zero padded to a byte
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bitio import code_bit_matrix, pack_codes
from .errors import (
    BadMagic,
    BadVersion,
    InvalidCode,
    InvalidMapping,
    TrailingGarbage,
    TruncatedPayload,
)
from .scheme import AREA_PREFIX_BITS, QlcScheme, validate_scheme
from .stats import NUM_SYMBOLS, Pmf256, as_byte_array, rank_symbols

MAGIC = b"QLC1"
VERSION = 1
HEADER_SIZE = 4 + 1 + 8 + NUM_SYMBOLS + 8
_LENGTH = struct.Struct("<Q")


def _readonly(arr):
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymbolMapping:
    """Bijection between byte values and frequency ranks.

    ``value_of`` is the decoder LUT (rank -> byte), ``rank_of`` the
    encoder-side index (byte -> rank).
    """

    value_of: np.ndarray
    rank_of: np.ndarray = field(init=False)

    def __post_init__(self):
        value_of = np.asarray(self.value_of, dtype=np.int64)
        if value_of.shape != (NUM_SYMBOLS,) or not np.array_equal(
            np.sort(value_of), np.arange(NUM_SYMBOLS)
        ):
            raise InvalidMapping("mapping table is not a permutation of 0..255")
        rank_of = np.empty(NUM_SYMBOLS, dtype=np.int64)
        rank_of[value_of] = np.arange(NUM_SYMBOLS)
        object.__setattr__(self, "value_of", _readonly(value_of))
        object.__setattr__(self, "rank_of", _readonly(rank_of))

    @classmethod
    def identity(cls) -> "SymbolMapping":
        return cls(np.arange(NUM_SYMBOLS))

    def __eq__(self, other):
        if not isinstance(other, SymbolMapping):
            return NotImplemented
        return np.array_equal(self.value_of, other.value_of)

    def to_bytes(self) -> bytes:
        return self.value_of.astype(np.uint8).tobytes()


def build_mapping(p: Pmf256) -> SymbolMapping:
    return SymbolMapping(np.array(rank_symbols(p)))


@dataclass(frozen=True, eq=False)
class EncoderTable:
    codes: np.ndarray
    lengths: np.ndarray
    bit_matrix: np.ndarray = field(repr=False)

    def codeword(self, value: int) -> str:
        """Codeword for a byte value as a bit string, e.g. ``"000010"``."""
        n = int(self.lengths[value])
        return format(int(self.codes[value]), f"0{n}b")


def build_encoder_table(s: QlcScheme, m: SymbolMapping) -> EncoderTable:
    validate_scheme(s)
    area = s.area_of_rank()[m.rank_of]
    widths = np.array(s.symbol_bits, dtype=np.int64)[area]
    bases = np.array([a.base_offset for a in s.areas], dtype=np.int64)[area]
    codes = (area << widths) | (m.rank_of - bases)
    lengths = widths + AREA_PREFIX_BITS
    return EncoderTable(
        _readonly(codes),
        _readonly(lengths),
        _readonly(code_bit_matrix(codes.tolist(), lengths.tolist())),
    )


@dataclass(frozen=True, eq=False)
class QlcContainer:
    scheme: QlcScheme
    mapping: SymbolMapping
    payload_length: int
    payload: bytes
    # exact payload size in bits when known (set by the encoder, not serialized)
    payload_bits: int | None = None

    def to_bytes(self) -> bytes:
        return b"".join(
            (
                MAGIC,
                bytes([VERSION]),
                self.scheme.descriptor(),
                self.mapping.to_bytes(),
                _LENGTH.pack(self.payload_length),
                self.payload,
            )
        )

    def __len__(self):
        return HEADER_SIZE + len(self.payload)

    @classmethod
    def from_bytes(cls, blob) -> "QlcContainer":
        return parse_container(blob)


def parse_container(blob) -> QlcContainer:
    """Validate and split a serialized container; the payload is not decoded."""
    blob = bytes(blob)
    if blob[:4] != MAGIC:
        raise BadMagic(f"bad magic {blob[:4]!r}, expected {MAGIC!r}")
    if len(blob) < 5:
        raise TruncatedPayload("container ends before the version byte")
    if blob[4] != VERSION:
        raise BadVersion(f"unsupported version {blob[4]}")
    if len(blob) < HEADER_SIZE:
        raise TruncatedPayload(f"header needs {HEADER_SIZE} bytes, file has {len(blob)}")
    scheme = QlcScheme.from_descriptor(blob[5:13])
    mapping = SymbolMapping(np.frombuffer(blob[13:269], dtype=np.uint8))
    (n,) = _LENGTH.unpack_from(blob, 269)
    return QlcContainer(scheme, mapping, n, blob[HEADER_SIZE:])


def encode(data, s: QlcScheme, m: SymbolMapping, table: EncoderTable | None = None) -> QlcContainer:
    """Code every byte of ``data`` with ``s`` under mapping ``m``.

    A prebuilt ``table`` (from :func:`build_encoder_table`) may be passed to
    skip rebuilding the LUT.
    """
    if table is None:
        table = build_encoder_table(s, m)
    arr = as_byte_array(data)
    payload, nbits = pack_codes(arr, table.bit_matrix, table.lengths)
    return QlcContainer(s, m, int(arr.size), payload, nbits)


def _kernel_args(c: QlcContainer):
    s = c.scheme
    buf = np.zeros(len(c.payload) + 2, dtype=np.uint8)
    buf[: len(c.payload)] = np.frombuffer(c.payload, dtype=np.uint8)
    nbits = 8 * len(c.payload)
    min_len = min(s.code_lengths)
    capacity = min(c.payload_length, nbits // min_len)
    out = np.empty(capacity, dtype=np.uint8)
    # a longer claimed length must fail on symbol `capacity`, so stop there
    return (
        buf,
        nbits,
        min(c.payload_length, capacity + 1),
        np.array(s.symbol_bits, dtype=np.int64),
        np.array([a.base_offset for a in s.areas], dtype=np.int64),
        np.array(s.counts, dtype=np.int64),
        c.mapping.value_of.astype(np.uint8),
        out,
    )


def _raise_status(status: int, index: int, pos: int, total: int) -> None:
    if status == _kernels.ST_TRUNCATED:
        raise TruncatedPayload(f"payload ends inside symbol {index} of {total} (bit {pos})")
    if status == _kernels.ST_INVALID_CODE:
        raise InvalidCode(f"symbol {index}: suffix outside its area (bit {pos})")
    if status == _kernels.ST_TRAILING:
        raise TrailingGarbage(f"unexpected bits after symbol {total} (bit {pos})")


def _as_container(c) -> QlcContainer:
    return c if isinstance(c, QlcContainer) else parse_container(c)


def _run(kernel, c) -> bytes:
    c = _as_container(c)
    args = _kernel_args(c)
    status, index, pos = kernel(*args)
    _raise_status(status, index, pos, c.payload_length)
    return args[-1].tobytes()


def decode(c) -> bytes:
    """Decode a container (object or serialized bytes) using the area-code LUTs."""
    return _run(_kernels.qlc_decode_lut, c)


def decode_bit_sequential(c) -> bytes:
    """Same contract as :func:`decode`, reading the payload one bit at a time."""
    return _run(_kernels.qlc_decode_bitwise, c)
