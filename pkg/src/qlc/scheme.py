"""Quad length coding schemes: structure, validation, presets and fitting.

A scheme splits the 256 frequency ranks into 8 contiguous areas.  A code is
the 3-bit area code followed by ``symbol_bits`` bits giving the rank's offset
inside the area.  Areas 0..6 are always full (``count == 2**symbol_bits``);
area 7 takes whatever ranks remain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidScheme
from .stats import NUM_SYMBOLS, Pmf256, rank_symbols

AREA_PREFIX_BITS = 3
NUM_AREAS = 1 << AREA_PREFIX_BITS
MAX_SYMBOL_BITS = 8
MAX_DISTINCT_LENGTHS = 4


@dataclass(frozen=True)
class QlcArea:
    area_code: int
    symbol_bits: int
    count: int
    base_offset: int

    @property
    def code_length(self) -> int:
        return AREA_PREFIX_BITS + self.symbol_bits

    @property
    def symbol_range(self) -> tuple[int, int]:
        """Inclusive range of ranks (encoded symbols) covered by this area."""
        return self.base_offset, self.base_offset + self.count - 1


@dataclass(frozen=True)
class QlcScheme:
    areas: tuple[QlcArea, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_counts(cls, counts, symbol_bits, name: str = "") -> "QlcScheme":
        """Build areas with cumulative offsets.  Does not validate."""
        offsets = [0, *itertools.accumulate(counts)][: len(counts)]
        areas = tuple(
            QlcArea(code, int(b), int(c), int(off))
            for code, (b, c, off) in enumerate(zip(symbol_bits, counts, offsets))
        )
        return cls(areas, name)

    @classmethod
    def from_symbol_bits(cls, symbol_bits, name: str = "") -> "QlcScheme":
        """Build and validate a scheme from its 8 suffix widths.

        The last area's count is the remainder after the seven full areas.
        """
        symbol_bits = [int(b) for b in symbol_bits]
        if len(symbol_bits) != NUM_AREAS:
            raise InvalidScheme("areas", f"expected {NUM_AREAS} areas, got {len(symbol_bits)}")
        if any(not 0 <= b <= MAX_SYMBOL_BITS for b in symbol_bits):
            raise InvalidScheme("symbol_bits", f"symbol_bits out of range: {symbol_bits}")
        counts = [1 << b for b in symbol_bits[:-1]]
        counts.append(NUM_SYMBOLS - sum(counts))
        scheme = cls.from_counts(counts, symbol_bits, name)
        validate_scheme(scheme)
        return scheme

    @classmethod
    def from_descriptor(cls, descriptor: bytes, name: str = "") -> "QlcScheme":
        """Inverse of :meth:`descriptor` (8 bytes, one suffix width per area)."""
        if len(descriptor) != NUM_AREAS:
            raise InvalidScheme("areas", f"descriptor must be {NUM_AREAS} bytes")
        return cls.from_symbol_bits(list(descriptor), name)

    def descriptor(self) -> bytes:
        return bytes(self.symbol_bits)

    @property
    def symbol_bits(self) -> tuple[int, ...]:
        return tuple(a.symbol_bits for a in self.areas)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(a.count for a in self.areas)

    @property
    def code_lengths(self) -> tuple[int, ...]:
        return tuple(a.code_length for a in self.areas)

    @property
    def distinct_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.code_lengths)))

    @property
    def kraft_sum(self) -> Fraction:
        return sum((Fraction(a.count, 1 << a.code_length) for a in self.areas), Fraction(0))

    def rank_lengths(self) -> np.ndarray:
        """Code length for each of the 256 ranks."""
        return np.repeat(np.array(self.code_lengths, dtype=np.int64), self.counts)

    def area_of_rank(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.areas), dtype=np.int64), self.counts)

    def __str__(self):
        label = self.name or "scheme"
        return f"{label}{list(self.symbol_bits)}"


def validate_scheme(s: QlcScheme) -> QlcScheme:
    """Raise :class:`InvalidScheme` naming the first violated constraint.

    Per-area constraints are checked before scheme-wide ones.  Returns ``s``
    unchanged when it is valid.
    """
    areas = s.areas
    if len(areas) != NUM_AREAS:
        raise InvalidScheme("areas", f"expected {NUM_AREAS} areas, got {len(areas)}")
    for idx, a in enumerate(areas):
        if a.area_code != idx:
            raise InvalidScheme("area_code", f"area {idx} has area_code {a.area_code}")
        if not 0 <= a.symbol_bits <= MAX_SYMBOL_BITS:
            raise InvalidScheme("symbol_bits", f"area {idx}: symbol_bits {a.symbol_bits} out of 0..8")
        if a.count < 1:
            raise InvalidScheme("count", f"area {idx}: count {a.count} < 1")
        if a.count > 1 << a.symbol_bits:
            raise InvalidScheme(
                "capacity", f"area {idx}: count {a.count} exceeds 2^{a.symbol_bits}"
            )
        if idx < NUM_AREAS - 1 and a.count != 1 << a.symbol_bits:
            raise InvalidScheme("full", f"area {idx}: count {a.count} != 2^{a.symbol_bits}")

    total = sum(a.count for a in areas)
    if total != NUM_SYMBOLS:
        raise InvalidScheme("sum", f"counts sum to {total}, not {NUM_SYMBOLS}")

    last = areas[-1]
    if last.symbol_bits != (last.count - 1).bit_length():
        raise InvalidScheme(
            "last_width",
            f"last area holds {last.count} symbols but uses {last.symbol_bits} bits",
        )

    offset = 0
    for a in areas:
        if a.base_offset != offset:
            raise InvalidScheme(
                "offsets", f"area {a.area_code}: base_offset {a.base_offset}, expected {offset}"
            )
        offset += a.count

    bits = s.symbol_bits
    if any(x > y for x, y in zip(bits, bits[1:])):
        raise InvalidScheme("monotone", f"symbol_bits not non-decreasing: {list(bits)}")
    if len(set(bits)) > MAX_DISTINCT_LENGTHS:
        raise InvalidScheme("lengths", f"{len(set(bits))} distinct code lengths (max 4)")
    if s.kraft_sum > 1:
        raise InvalidScheme("kraft", f"Kraft sum {s.kraft_sum} > 1")
    return s


def preset_ffn1() -> QlcScheme:
    """6/6/6/6/6/7/8/11-bit scheme fitted to a smooth e4m3 activation PMF."""
    return QlcScheme.from_symbol_bits((3, 3, 3, 3, 3, 4, 5, 8), name="ffn1")


def preset_ffn2() -> QlcScheme:
    """4/6/6/6/6/8/8/11-bit scheme with a 2-symbol first area for a spiky PMF."""
    return QlcScheme.from_symbol_bits((1, 3, 3, 3, 3, 5, 5, 8), name="ffn2")


PRESETS = {"ffn1": preset_ffn1, "ffn2": preset_ffn2}


def expected_code_length(s: QlcScheme, p: Pmf256, ranking=None) -> float:
    """Average bits per symbol when ``p`` is coded with ``s`` under ``ranking``.

    ``ranking`` lists byte values from rank 0 to rank 255; it defaults to the
    descending-probability order.
    """
    if ranking is None:
        ranking = rank_symbols(p)
    by_rank = p.probs[np.asarray(ranking, dtype=np.int64)]
    return math.fsum((by_rank * s.rank_lengths()).tolist())


@lru_cache(maxsize=None)
def enumerate_family() -> tuple[tuple[int, ...], ...]:
    """Every valid symbol_bits tuple in the search family, in lexicographic order."""
    family = []
    for head in itertools.combinations_with_replacement(range(MAX_SYMBOL_BITS + 1), NUM_AREAS - 1):
        used = sum(1 << b for b in head)
        if used >= NUM_SYMBOLS:
            continue
        last = (NUM_SYMBOLS - used - 1).bit_length()
        if last < head[-1]:
            continue
        bits = (*head, last)
        if len(set(bits)) > MAX_DISTINCT_LENGTHS:
            continue
        family.append(bits)
    return tuple(family)


@lru_cache(maxsize=None)
def _family_length_matrix() -> np.ndarray:
    family = enumerate_family()
    rows = np.empty((len(family), NUM_SYMBOLS), dtype=np.int64)
    for i, bits in enumerate(family):
        counts = [1 << b for b in bits[:-1]]
        counts.append(NUM_SYMBOLS - sum(counts))
        rows[i] = np.repeat(np.array(bits) + AREA_PREFIX_BITS, counts)
    rows.setflags(write=False)
    return rows


def _exact_weights(values) -> list[int]:
    """Scale non-negative floats to integers with one common power-of-two factor."""
    ratios = [float(v).as_integer_ratio() for v in values]
    shift = max(d.bit_length() - 1 for _, d in ratios)
    return [n << (shift - (d.bit_length() - 1)) for n, d in ratios]


def adapt_scheme(p: Pmf256) -> QlcScheme:
    """Search the scheme family for the lowest expected code length on ``p``.

    Candidates are scored in float64 first; all candidates within rounding
    distance of the best are then re-scored in exact integer arithmetic, and
    exact ties go to the lexicographically smallest symbol_bits tuple.
    """
    ranked = p.probs[np.asarray(rank_symbols(p), dtype=np.int64)]
    lengths = _family_length_matrix()
    scores = lengths @ ranked
    near = np.flatnonzero(scores <= scores.min() + 1e-9)

    weights = _exact_weights(ranked)
    family = enumerate_family()
    best = min(
        near.tolist(),
        key=lambda i: (sum(l * w for l, w in zip(lengths[i].tolist(), weights)), family[i]),
    )
    return QlcScheme.from_symbol_bits(family[best], name="adapt")
