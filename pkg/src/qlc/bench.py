"""Throughput benchmark for QLC and Huffman coding.

Decoders are checked against the input before anything is timed.
"""

from __future__ import annotations

import time

from .codec import build_encoder_table, build_mapping, decode, decode_bit_sequential, encode
from .errors import QlcError
from .huffman import build_huffman, huffman_decode, huffman_encode
from .scheme import PRESETS, adapt_scheme
from .stats import build_histogram, to_pmf

ROWS = (
    "qlc_encode",
    "qlc_decode_lut",
    "qlc_decode_bitwise",
    "huffman_encode",
    "huffman_decode_tree",
)


class VerificationError(QlcError):
    category = "VerificationError"


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_bench(data: bytes, scheme: str = "adapt", repeat: int = 5) -> dict:
    """Time the five coding paths on ``data``; returns a JSON-ready dict.

    Raises :class:`VerificationError` if any decoder fails to reproduce the
    input, in which case nothing is timed.
    """
    h = build_histogram(data)
    pmf = to_pmf(h)
    s = adapt_scheme(pmf) if scheme == "adapt" else PRESETS[scheme]()
    m = build_mapping(pmf)
    table = build_encoder_table(s, m)
    huff = build_huffman(h)

    container = encode(data, s, m, table)
    hbits, _ = huffman_encode(data, huff)
    n = len(data)
    decoders = {
        "qlc_decode_lut": lambda: decode(container),
        "qlc_decode_bitwise": lambda: decode_bit_sequential(container),
        "huffman_decode_tree": lambda: huffman_decode(hbits, huff, n),
    }
    for name, fn in decoders.items():
        if fn() != data:
            raise VerificationError(f"{name} output does not match the input")

    ops = {
        "qlc_encode": lambda: encode(data, s, m, table),
        "qlc_decode_lut": decoders["qlc_decode_lut"],
        "qlc_decode_bitwise": decoders["qlc_decode_bitwise"],
        "huffman_encode": lambda: huffman_encode(data, huff),
        "huffman_decode_tree": decoders["huffman_decode_tree"],
    }
    rows = []
    for name in ROWS:
        seconds = _best_of(ops[name], repeat)
        rows.append({"op": name, "seconds": seconds, "mb_per_s": n / seconds / 1e6})
    return {
        "input_bytes": n,
        "scheme": s.name,
        "symbol_bits": list(s.symbol_bits),
        "repeat": repeat,
        "verified": True,
        "rows": rows,
    }


def format_bench(result: dict) -> str:
    lines = [
        f"input {result['input_bytes']} bytes, scheme {result['scheme']} "
        f"{result['symbol_bits']}, best of {result['repeat']}",
    ]
    for row in result["rows"]:
        lines.append(f"{row['op']:<22} {row['mb_per_s']:10.2f} MB/s  ({row['seconds'] * 1e3:.3f} ms)")
    return "\n".join(lines)
