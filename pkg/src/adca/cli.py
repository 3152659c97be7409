"""Command-line interface: ``adca <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .antidictionary import compute_mfws, format_antidictionary, read_antidictionary
from .automaton import automaton_for, dump
from .dynamic_codec import MODE_DYNAMIC, decode_dynamic, encode_dynamic
from .harness import check_bounds, emit_csv, run_convergence, summarize
from .markov_source import load_source, sample, stationary
from .models import get_model
from .static_codec import MODE_STATIC, decode_static, encode_static

DEFAULT_MFW_LEN = 16


def _bytes_to_symbols(data: bytes, binary: bool) -> tuple[list[int], int]:
    if not binary:
        return list(data), 256
    return [(b >> (7 - k)) & 1 for b in data for k in range(8)], 2


def _symbols_to_bytes(x: list[int], J: int) -> bytes:
    if J == 256:
        return bytes(x)
    if J == 2:
        if len(x) % 8:
            raise SystemExit("decoded bit count is not a whole number of bytes")
        return bytes(
            sum(bit << (7 - k) for k, bit in enumerate(x[i:i + 8])) for i in range(0, len(x), 8)
        )
    if J < 256:
        return bytes(x)
    raise SystemExit(f"cannot write symbols of an alphabet of size {J} as bytes")


def cmd_compress(args) -> int:
    data = Path(args.input).read_bytes()
    x, J = _bytes_to_symbols(data, args.binary)
    if args.mode == "static":
        A = compute_mfws(x, args.max_mfw_len, J)
        blob = encode_static(x, A).to_bytes()
    else:
        blob = encode_dynamic(x, args.mfw_len, J).to_bytes()
    Path(args.output).write_bytes(blob)
    print(f"{len(data)} -> {len(blob)} bytes", file=sys.stderr)
    return 0


def cmd_decompress(args) -> int:
    blob = Path(args.input).read_bytes()
    if len(blob) < 2 or blob[0] != 0xDC:
        raise SystemExit("not an antidictionary container")
    if blob[1] == MODE_STATIC:
        from .static_codec import StaticCodeword
        cw = StaticCodeword.from_bytes(blob)
        x, J = decode_static(cw), cw.J
    elif blob[1] == MODE_DYNAMIC:
        from .dynamic_codec import DynamicCodeword
        cw = DynamicCodeword.from_bytes(blob)
        x, J = decode_dynamic(cw), cw.J
    else:
        raise SystemExit(f"unknown mode byte {blob[1]:#04x}")
    Path(args.output).write_bytes(_symbols_to_bytes(x, J))
    return 0


def _load_model(args):
    if args.spec:
        return load_source(args.spec), Path(args.spec).stem
    return get_model(args.model), args.model


def cmd_simulate(args) -> int:
    model, _ = _load_model(args)
    x = sample(model, args.n, args.seed)
    Path(args.out).write_bytes(bytes(x))
    return 0


def cmd_entropy(args) -> int:
    model, _ = _load_model(args)
    info = stationary(model)
    G = model.G
    for s, mu in enumerate(info.mu):
        locus = "".join(map(str, G.loci[s])) or "lambda"
        print(f"state {s} {locus} mu={mu:.12g}")
    print(f"entropy {info.entropy:.12g}")
    return 0


def cmd_converge(args) -> int:
    model, name = _load_model(args)
    lengths = [int(v) for v in args.lengths.split(",")]
    records = run_convergence(model, args.mode, lengths, args.trials, args.seed, name=name)
    if args.csv:
        emit_csv(records, args.csv)
    for row in summarize(records):
        print(f"{row['mode']:8s} n={row['n']:<9d} H={row['entropy']:.6f} "
              f"median l_n={row['median_bits_per_symbol']:.6f} "
              f"header/n={row['median_header_per_symbol']:.6f}")
    problems = check_bounds(records)
    for p in problems:
        print("BOUND VIOLATION:", p, file=sys.stderr)
    return 1 if problems else 0


def cmd_mfw(args) -> int:
    x, J = _bytes_to_symbols(Path(args.input).read_bytes(), args.binary)
    sys.stdout.write(format_antidictionary(compute_mfws(x, args.max_len, J)))
    return 0


def cmd_automaton(args) -> int:
    sys.stdout.write(dump(automaton_for(read_antidictionary(args.antidictionary))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adca", description="Antidictionary compression toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a file")
    p.add_argument("--mode", choices=["static", "dynamic"], default="dynamic")
    p.add_argument("--max-mfw-len", type=int, default=DEFAULT_MFW_LEN,
                   help="longest forbidden word kept by the static codec")
    p.add_argument("--mfw-len", type=int, default=DEFAULT_MFW_LEN,
                   help="m for the dynamic codec (context depth m-1)")
    p.add_argument("--binary", action="store_true", help="treat the input as a bit string")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decompress a container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decompress)

    def source_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--spec", help="source spec file")
        g.add_argument("--model", help="built-in model name")

    p = sub.add_parser("simulate", help="sample a string from a source (one byte per symbol)")
    source_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("entropy", help="stationary distribution and entropy rate")
    source_args(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("converge", help="run a convergence experiment")
    source_args(p)
    p.add_argument("--mode", choices=["static", "dynamic", "both"], default="both")
    p.add_argument("--lengths", default="1024,16384,262144,1048576")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("mfw", help="print the antidictionary of a file")
    p.add_argument("--max-len", type=int, default=DEFAULT_MFW_LEN)
    p.add_argument("--binary", action="store_true")
    p.add_argument("input")
    p.set_defaults(func=cmd_mfw)

    p = sub.add_parser("automaton", help="dump G(A) for an antidictionary file")
    p.add_argument("--antidictionary", required=True)
    p.set_defaults(func=cmd_automaton)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"adca: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
