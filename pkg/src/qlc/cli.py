"""Command-line interface: ``qlc {analyze,compare,encode,decode,gen,bench}``.

Exit codes: 0 success, 2 I/O or usage error, 3 empty input with
``--scheme adapt``, 4 not a QLC1 file, 5 corrupt container, 6 benchmark
verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .analysis import analyze, format_report
from .bench import VerificationError, format_bench, run_bench
from .codec import HEADER_SIZE, SymbolMapping, build_mapping, decode, encode
from .errors import BadMagic, BadVersion, FormatError, InvalidScheme
from .scheme import PRESETS, adapt_scheme
from .stats import build_histogram, compressibility, to_pmf
from .synth import KINDS, SyntheticSpec, generate

EXIT_OK = 0
EXIT_IO = 2
EXIT_EMPTY_ADAPT = 3
EXIT_NOT_QLC = 4
EXIT_CORRUPT = 5
EXIT_VERIFY = 6

_SIZE = re.compile(r"^(\d+)\s*([kmg]i?b?)?$", re.IGNORECASE)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_size(text: str) -> int:
    """``"4096"``, ``"64K"``, ``"1MiB"`` -> bytes (binary multiples)."""
    m = _SIZE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"invalid size {text!r}")
    unit = (m.group(2) or "").lower()[:1]
    return int(m.group(1)) << {"": 0, "k": 10, "m": 20, "g": 30}[unit]


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_analyze(args) -> int:
    data = _read(args.input)
    if not data:
        raise CliError(EXIT_IO, f"{args.input} is empty")
    report = analyze(data)
    print(json.dumps(report.to_dict(), indent=2) if args.json else format_report(report))
    return EXIT_OK


def cmd_encode(args) -> int:
    data = _read(args.input)
    if not data:
        if args.scheme == "adapt":
            raise CliError(EXIT_EMPTY_ADAPT, "cannot adapt a scheme to empty input")
        mapping = SymbolMapping.identity()
        scheme = PRESETS[args.scheme]()
    else:
        pmf = to_pmf(build_histogram(data))
        mapping = build_mapping(pmf)
        scheme = adapt_scheme(pmf) if args.scheme == "adapt" else PRESETS[args.scheme]()
    container = encode(data, scheme, mapping)
    blob = container.payload if args.raw else container.to_bytes()
    _write(args.output, blob)

    size = len(data)
    payload = compressibility(container.payload_bits / size) if size else 0.0
    overall = 1.0 - len(blob) / size if size else 0.0
    print(f"scheme      {scheme.name} {list(scheme.symbol_bits)}")
    print(f"original    {size} bytes")
    print(f"encoded     {len(blob)} bytes ({'raw payload' if args.raw else f'{HEADER_SIZE}-byte header + payload'})")
    print(f"payload     {payload:+.2%} compressibility")
    print(f"file        {overall:+.2%} compressibility")
    return EXIT_OK


def cmd_decode(args) -> int:
    blob = _read(args.input)
    try:
        data = decode(blob)
    except (BadMagic, BadVersion) as exc:
        raise CliError(EXIT_NOT_QLC, f"{exc.category}: {exc}") from exc
    except (FormatError, InvalidScheme) as exc:
        raise CliError(EXIT_CORRUPT, f"{exc.category}: {exc}") from exc
    _write(args.output, data)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = SyntheticSpec(
            kind=args.kind,
            size=args.size,
            seed=args.seed,
            sigma=args.sigma,
            p0=args.p0,
            exponent=args.exponent,
        )
    except ValueError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    _write(args.output, generate(spec))
    return EXIT_OK


def cmd_bench(args) -> int:
    data = _read(args.input)
    if not data:
        raise CliError(EXIT_IO, f"{args.input} is empty")
    try:
        result = run_bench(data, scheme=args.scheme, repeat=args.repeat)
    except VerificationError as exc:
        raise CliError(EXIT_VERIFY, f"verification failed: {exc}") from exc
    print(json.dumps(result, indent=2) if args.json else format_bench(result))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlc", description="Quad length coding for byte streams")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("analyze", "compare"):
        p = sub.add_parser(name, help="entropy, Huffman and QLC scheme comparison")
        p.add_argument("input")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", help="write a QLC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--scheme", choices=[*PRESETS, "adapt"], default="adapt")
    p.add_argument("--raw", action="store_true", help="write the payload only, no header")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="restore the original bytes from a QLC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("gen", help="generate a seeded synthetic corpus")
    p.add_argument("output")
    p.add_argument("--kind", choices=KINDS, default="gaussian-e4m3")
    p.add_argument("--size", type=parse_size, default=1 << 20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--p0", type=float, default=0.5, help="zero probability for spike-zero")
    p.add_argument("--exponent", type=float, default=1.1, help="zipf exponent")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="encode/decode throughput, QLC vs Huffman")
    p.add_argument("input")
    p.add_argument("--scheme", choices=[*PRESETS, "adapt"], default="adapt")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qlc {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
