"""Quad Length Codes: 3-bit area prefix codes for 8-bit symbol streams."""

from .codec import (
    QlcContainer,
    SymbolMapping,
    build_encoder_table,
    build_mapping,
    decode,
    decode_bit_sequential,
    encode,
    parse_container,
)
from .errors import (
    BadMagic,
    BadVersion,
    InvalidCode,
    InvalidMapping,
    InvalidScheme,
    MissingCode,
    QlcError,
    TrailingGarbage,
    TruncatedPayload,
    ZeroTotal,
)
from .huffman import build_huffman, huffman_decode, huffman_encode, huffman_expected_length
from .scheme import (
    QlcArea,
    QlcScheme,
    adapt_scheme,
    expected_code_length,
    preset_ffn1,
    preset_ffn2,
    validate_scheme,
)
from .stats import (
    Histogram256,
    Pmf256,
    build_histogram,
    rank_symbols,
    shannon_entropy,
    to_pmf,
)

__version__ = "0.1.0"
