"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line; the lines are also collected into an
"acceptance criteria" section of the pytest terminal summary.
"""

import json
import math
import time

import numpy as np
import pytest

from _fuzz import corrupt, fuzz_cases
from _oracles import best_scheme_oracle, brute_force_family
from qlc import bench, cli
from qlc.bitio import bits_from_string
from qlc.codec import (
    QlcContainer,
    SymbolMapping,
    build_encoder_table,
    build_mapping,
    decode,
    decode_bit_sequential,
    encode,
)
from qlc.errors import FormatError, InvalidScheme
from qlc.huffman import build_huffman, huffman_expected_length
from qlc.scheme import adapt_scheme, expected_code_length, preset_ffn1, preset_ffn2
from qlc.stats import Histogram256, Pmf256, build_histogram, compressibility, shannon_entropy, to_pmf
from qlc.synth import SyntheticSpec, generate

MIB = 1 << 20


@pytest.fixture(scope="module")
def fuzz_suite():
    start = time.perf_counter()
    suite = [(data, encode(data, s, m).to_bytes(), s) for data, s, m in fuzz_cases(10_000)]
    return suite, time.perf_counter() - start


def _outcome(fn, blob):
    try:
        return fn(blob)
    except (FormatError, InvalidScheme) as exc:
        return type(exc).__name__


def _random_histograms(count, seed):
    """Varied shapes: dense, sparse, spiky, power-law, near-uniform, tied."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        kind = i % 5
        if kind == 0:
            counts = rng.integers(0, 10_000, 256)
        elif kind == 1:
            counts = rng.integers(1, 50, 256) * (rng.random(256) < rng.uniform(0.01, 0.3))
        elif kind == 2:
            counts = rng.integers(1, 100, 256)
            counts[rng.integers(256)] += rng.integers(1_000, 100_000)
        elif kind == 3:
            w = 1.0 / np.arange(1, 257) ** rng.uniform(0.3, 3.0)
            counts = rng.permutation(np.floor(w / w[-1]).astype(np.int64))
        else:
            counts = rng.choice([1, 2, 3], 256)
        if np.count_nonzero(counts) < 2:
            counts[:2] += 1
        out.append(Histogram256.from_counts(counts))
    return out


def test_c01_round_trip_fuzz(fuzz_suite, criterion):
    with criterion("1", "round trip over 10,000 fuzz inputs (ffn1/ffn2/adapted/random), < 60 s"):
        suite, encode_seconds = fuzz_suite
        start = time.perf_counter()
        failures = sum(decode(blob) != data for data, blob, _ in suite)
        elapsed = encode_seconds + time.perf_counter() - start
        names = {s.name for _, _, s in suite}
        covered = set().union(*(set(data) for data, _, _ in suite))
        assert len(suite) >= 10_000
        assert {"ffn1", "ffn2", "adapt"} <= names
        assert covered == set(range(256))
        assert max(len(d) for d, _, _ in suite) == 64 * 1024
        print(f"  {len(suite)} inputs, {sum(len(d) for d, _, _ in suite) / 1e6:.1f} MB, {elapsed:.1f} s")
        assert failures == 0
        assert elapsed < 60, f"{elapsed:.1f} s"


def test_c02_worked_example(criterion):
    with criterion("2", "bits 100 010 under ffn1 decode to encoded symbol 32 + 2 = 34"):
        c = QlcContainer(preset_ffn1(), SymbolMapping.identity(), 1, bits_from_string("100_010"))
        assert decode(c) == bytes([34])
        assert decode_bit_sequential(c) == bytes([34])
        assert build_encoder_table(preset_ffn1(), SymbolMapping.identity()).codeword(34) == "100010"


def test_c03_kraft_sums(criterion):
    with criterion("3", "Kraft sums 0.95703125 (ffn1) and 0.9521484375 (ffn2), exact"):
        assert float(preset_ffn1().kraft_sum) == 0.95703125
        assert float(preset_ffn2().kraft_sum) == 0.9521484375


TABLE_ROWS = {
    # area code, count, symbol bits, code length, first rank, last rank
    "ffn1": [
        ("000", 8, 3, 6, 0, 7),
        ("001", 8, 3, 6, 8, 15),
        ("010", 8, 3, 6, 16, 23),
        ("011", 8, 3, 6, 24, 31),
        ("100", 8, 3, 6, 32, 39),
        ("101", 16, 4, 7, 40, 55),
        ("110", 32, 5, 8, 56, 87),
        ("111", 168, 8, 11, 88, 255),
    ],
    "ffn2": [
        ("000", 2, 1, 4, 0, 1),
        ("001", 8, 3, 6, 2, 9),
        ("010", 8, 3, 6, 10, 17),
        ("011", 8, 3, 6, 18, 25),
        ("100", 8, 3, 6, 26, 33),
        ("101", 32, 5, 8, 34, 65),
        ("110", 32, 5, 8, 66, 97),
        ("111", 158, 8, 11, 98, 255),
    ],
}


def test_c04_scheme_tables(criterion):
    with criterion("4", "presets reproduce both 8-row scheme tables field for field"):
        for name, make in (("ffn1", preset_ffn1), ("ffn2", preset_ffn2)):
            rows = [
                (format(a.area_code, "03b"), a.count, a.symbol_bits, a.code_length, *a.symbol_range)
                for a in make().areas
            ]
            assert rows == TABLE_ROWS[name]


def test_c05a_uniform_expected_length(criterion):
    with criterion("5a", "uniform PMF under ffn1: E[L] = 9.59375 bits"):
        assert expected_code_length(preset_ffn1(), Pmf256.uniform()) == 9.59375


def test_c05b_ideal_compressibility_6_11(criterion):
    with criterion("5b", "ideal compressibility at H = 6.11 reproduces 0.236 within 5e-4"):
        assert abs(compressibility(6.11) - 0.236) <= 5e-4


def test_c05c_ideal_compressibility_6_69(criterion):
    # (8 - 6.69) / 8 = 0.16375, which is 7.5e-4 from the reported 0.163
    with criterion("5c", "ideal compressibility at H = 6.69 reproduces 0.163 within 5e-4"):
        assert abs(compressibility(6.69) - 0.163) <= 5e-4, f"got {compressibility(6.69)}"


def test_c06_optimality_ordering(criterion):
    with criterion("6", "entropy <= Huffman < entropy + 1 and Huffman <= QLC on 1,000 PMFs, < 30 s"):
        start = time.perf_counter()
        violations = []
        for i, h in enumerate(_random_histograms(1000, seed=6)):
            p = to_pmf(h)
            ent = shannon_entropy(p).entropy_bits
            huff = build_huffman(h)
            ell = huffman_expected_length(huff, p)
            if not ent - 1e-12 <= ell < ent + 1:
                violations.append((i, "sandwich", ent, ell))
            huff_bits = int(np.dot(h.counts, huff.lengths))
            m = build_mapping(p)
            for s in (preset_ffn1(), preset_ffn2(), adapt_scheme(p)):
                qlc_bits = int(np.dot(h.counts[m.value_of], s.rank_lengths()))
                if huff_bits > qlc_bits or ell > expected_code_length(s, p, m.value_of) + 1e-12:
                    violations.append((i, s.name, huff_bits, qlc_bits))
        elapsed = time.perf_counter() - start
        assert violations == []
        assert elapsed < 30, f"{elapsed:.1f} s"


def test_c07_adaptation_gain(criterion):
    with criterion("7", "spike-zero (p0 = 0.5, 1 MiB): adapted beats ffn1, first area < 6 bits"):
        data = generate(SyntheticSpec("spike-zero", MIB, seed=2025, p0=0.5))
        p = to_pmf(build_histogram(data))
        adapted = adapt_scheme(p)
        gain = compressibility(expected_code_length(adapted, p)) - compressibility(
            expected_code_length(preset_ffn1(), p)
        )
        print(f"  adapted {list(adapted.symbol_bits)}, gain over ffn1 {gain:+.2%}")
        assert gain > 0
        assert adapted.areas[0].code_length < 6


def test_c08_search_oracle(criterion):
    with criterion("8", "adapt_scheme equals brute-force re-enumeration on 20 PMFs incl. ties"):
        family = brute_force_family()
        pmfs = [to_pmf(h) for h in _random_histograms(16, seed=8)]
        pmfs.append(Pmf256.uniform())
        pmfs.append(Pmf256.point_mass(200))
        tied = np.zeros(256, dtype=np.int64)
        tied[[3, 9, 27, 81]] = 5
        pmfs.append(to_pmf(Histogram256.from_counts(tied)))
        two_level = np.where(np.arange(256) < 40, 7, 1)
        pmfs.append(to_pmf(Histogram256.from_counts(two_level)))
        assert len(pmfs) == 20
        mismatches = []
        for i, p in enumerate(pmfs):
            expected, _ = best_scheme_oracle(p.probs, family)
            got = adapt_scheme(p).symbol_bits
            if got != expected:
                mismatches.append((i, got, expected))
        assert mismatches == []


def test_c09_decoder_oracle(fuzz_suite, criterion):
    with criterion("9", "LUT decode == bit-sequential decode on fuzz suite + corrupted containers"):
        suite, _ = fuzz_suite
        mismatches = sum(decode_bit_sequential(blob) != data for data, blob, _ in suite)
        rng = np.random.default_rng(909)
        picks = rng.choice(len(suite), 3000, replace=False)
        damaged = []
        for k in picks:
            blob = suite[k][1]
            bad = corrupt(blob, rng)
            if bad != blob:
                damaged.append(bad)
        seen = set()
        for bad in damaged:
            fast, slow = _outcome(decode, bad), _outcome(decode_bit_sequential, bad)
            if fast != slow:
                mismatches += 1
            if isinstance(fast, str):
                seen.add(fast)
        assert len(damaged) >= 1000
        assert mismatches == 0
        assert {"BadMagic", "BadVersion", "TruncatedPayload", "InvalidCode", "TrailingGarbage"} <= seen


def test_c10_size_law(criterion):
    with criterion("10", "1 MiB: payload bits = sum count x length; size = 277 + ceil(bits / 8)"):
        data = generate(SyntheticSpec("gaussian-e4m3", MIB, seed=10))
        h = build_histogram(data)
        for s in (preset_ffn1(), preset_ffn2(), adapt_scheme(to_pmf(h))):
            m = build_mapping(to_pmf(h))
            table = build_encoder_table(s, m)
            c = encode(data, s, m, table)
            bits = sum(int(h.counts[v]) * int(table.lengths[v]) for v in range(256))
            assert c.payload_bits == bits
            assert len(c.to_bytes()) == 277 + math.ceil(bits / 8)
            payload_rate = compressibility(bits / len(data))
            assert abs(payload_rate - compressibility(expected_code_length(s, to_pmf(h)))) <= 1e-9


def test_c11_quad_property(criterion):
    with criterion("11", "all schemes: 8 areas, <= 4 lengths; Huffman > 4 lengths on heavy tails"):
        schemes = [preset_ffn1(), preset_ffn2()]
        schemes += [adapt_scheme(to_pmf(h)) for h in _random_histograms(200, seed=11)]
        for kind in ("gaussian-e4m3", "spike-zero", "zipf", "uniform"):
            schemes.append(adapt_scheme(to_pmf(build_histogram(generate(SyntheticSpec(kind, MIB, seed=1))))))
        for s in schemes:
            assert len(s.areas) == 8
            assert len(s.distinct_lengths) <= 4
        for kind in ("gaussian-e4m3", "spike-zero", "zipf"):
            huff = build_huffman(build_histogram(generate(SyntheticSpec(kind, MIB, seed=1))))
            print(f"  {kind}: Huffman lengths {huff.min_length}-{huff.max_length}, {len(huff.distinct_lengths)} distinct")
            assert len(huff.distinct_lengths) > 4


def test_c12_bench_integrity(tmp_path, capsys, monkeypatch, criterion):
    with criterion("12", "bench verifies before timing; LUT decode >= bit-sequential throughput"):
        path = tmp_path / "corpus.bin"
        path.write_bytes(generate(SyntheticSpec("gaussian-e4m3", MIB, seed=12)))
        assert cli.main(["bench", str(path), "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        rows = {r["op"]: r["mb_per_s"] for r in report["rows"]}
        print(f"  throughput MB/s: {json.dumps({k: round(v, 1) for k, v in rows.items()})}")
        assert report["verified"] and report["repeat"] >= 5
        assert set(rows) == set(bench.ROWS)
        assert rows["qlc_decode_lut"] >= rows["qlc_decode_bitwise"]

        capsys.readouterr()
        monkeypatch.setattr(bench, "decode_bit_sequential", lambda c: b"")
        assert cli.main(["bench", str(path), "--json"]) == 6
        assert capsys.readouterr().out == ""
