"""Corpus analysis: entropy, Huffman baseline and QLC scheme comparison."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .codec import HEADER_SIZE, build_mapping
from .huffman import build_huffman, huffman_expected_length
from .scheme import PRESETS, QlcScheme, adapt_scheme, expected_code_length
from .stats import (
    Histogram256,
    build_histogram,
    compressibility,
    shannon_entropy,
    to_pmf,
)


@dataclass
class QlcRow:
    scheme: str
    symbol_bits: list[int]
    code_lengths: list[int]
    expected_length: float
    compressibility: float
    payload_bits: int
    container_bytes: int
    container_compressibility: float
    area_occupancy: list[float]


@dataclass
class AnalysisReport:
    total_symbols: int
    entropy_bits: float
    ideal_compressibility: float
    huffman_expected_length: float
    huffman_compressibility: float
    huffman_length_range: tuple[int, int]
    huffman_distinct_lengths: int
    qlc_rows: list[QlcRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["huffman_length_range"] = list(self.huffman_length_range)
        return d

    def row(self, name: str) -> QlcRow:
        for r in self.qlc_rows:
            if r.scheme == name:
                return r
        raise KeyError(name)


def qlc_row(h: Histogram256, scheme: QlcScheme) -> QlcRow:
    pmf = to_pmf(h)
    mapping = build_mapping(pmf)
    rank_counts = h.counts[mapping.value_of]
    lengths = scheme.rank_lengths()
    bits = int((rank_counts * lengths).sum())
    per_area = np.add.reduceat(rank_counts, [a.base_offset for a in scheme.areas])
    container = HEADER_SIZE + -(-bits // 8)
    mean = expected_code_length(scheme, pmf, mapping.value_of)
    return QlcRow(
        scheme=scheme.name or str(scheme),
        symbol_bits=list(scheme.symbol_bits),
        code_lengths=list(scheme.distinct_lengths),
        expected_length=mean,
        compressibility=compressibility(mean),
        payload_bits=bits,
        container_bytes=container,
        container_compressibility=1.0 - container / h.total,
        area_occupancy=(per_area / h.total).tolist(),
    )


def analyze(data=None, *, histogram: Histogram256 | None = None) -> AnalysisReport:
    """Full report for a non-empty byte sequence (or a prebuilt histogram)."""
    h = histogram if histogram is not None else build_histogram(data)
    pmf = to_pmf(h)
    ent = shannon_entropy(pmf)
    huff = build_huffman(h)
    huff_len = huffman_expected_length(huff, pmf)
    schemes = [make() for make in PRESETS.values()] + [adapt_scheme(pmf)]
    return AnalysisReport(
        total_symbols=h.total,
        entropy_bits=ent.entropy_bits,
        ideal_compressibility=ent.ideal_compressibility,
        huffman_expected_length=huff_len,
        huffman_compressibility=compressibility(huff_len),
        huffman_length_range=(huff.min_length, huff.max_length),
        huffman_distinct_lengths=len(huff.distinct_lengths),
        qlc_rows=[qlc_row(h, s) for s in schemes],
    )


def format_report(r: AnalysisReport) -> str:
    lines = [
        f"symbols            {r.total_symbols}",
        f"entropy            {r.entropy_bits:.4f} bits/symbol",
        f"ideal              {r.ideal_compressibility:+.2%}",
        f"huffman            {r.huffman_compressibility:+.2%}  "
        f"({r.huffman_expected_length:.4f} bits/symbol, lengths "
        f"{r.huffman_length_range[0]}-{r.huffman_length_range[1]}, "
        f"{r.huffman_distinct_lengths} distinct)",
        "",
        f"{'scheme':<8} {'symbol bits':<26} {'E[L]':>8} {'payload':>9} {'container':>10}",
    ]
    for row in r.qlc_rows:
        lines.append(
            f"{row.scheme:<8} {' '.join(map(str, row.symbol_bits)):<26} "
            f"{row.expected_length:8.4f} {row.compressibility:+9.2%} "
            f"{row.container_compressibility:+10.2%}"
        )
    lines.append("")
    lines.append("area occupancy (fraction of symbols per area)")
    for row in r.qlc_rows:
        occ = " ".join(f"{x:6.3f}" for x in row.area_occupancy)
        lines.append(f"{row.scheme:<8} {occ}")
    return "\n".join(lines)
