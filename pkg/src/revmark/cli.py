"""Command-line front end: embed, extract, quality and bench.

Exit status is 0 on success, 1 on a usage error and 2 on a data error
(capacity, malformed stream, CRC, unreadable input).
"""

import argparse
import math
import sys

from .bench import SCHEMES, run_bench, scheme_name, write_csv
from .bits import bits_to_bytes, bytes_to_bits
from .codec import frame_decode, frame_encode, prng_bits
from .de import de_embed, de_extract
from .errors import IoFailure, MalformedStream, WatermarkError
from .image import load_pgm, save_pgm
from .metrics import SsimParams, psnr, ssim
from .rrl import RestorationRecord, rrl_embed, rrl_extract

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _read_bytes(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc


def _write_bytes(path, data):
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def cmd_embed(args):
    host = load_pgm(args.host)
    if args.payload is not None:
        data = bytes_to_bits(_read_bytes(args.payload))
    else:
        data = prng_bits(args.seed, args.random_bits)
    stream = frame_encode(data)
    if args.scheme == "de":
        wimg = de_embed(host, stream)
        if args.record:
            _warn("--record is only used by the rrl scheme; ignored")
    else:
        wimg, record = rrl_embed(host, stream)
        if args.record:
            record.save(args.record)
        else:
            _warn("no --record given; only literal-mode restore will be possible")
    save_pgm(wimg, args.out)
    print(f"embedded {data.size} payload bits ({stream.size} framed) with {args.scheme}")
    return EXIT_OK


def cmd_extract(args):
    wimg = load_pgm(args.input)
    if args.scheme == "de":
        bits, restored = de_extract(wimg)
        data = frame_decode(bits)
        mode = "exact"
    else:
        record = RestorationRecord.load(args.record) if args.record else None
        if record is None:
            _warn("no --record given; restoring in literal mode (not bit-exact)")
        ex = rrl_extract(wimg, record)
        data, restored, mode = ex.payload, ex.restored, ex.mode
    _write_bytes(args.payload_out, bits_to_bytes(data))
    save_pgm(restored, args.restored_out)
    print(f"extracted {data.size} payload bits, {mode} restore")
    return EXIT_OK


def cmd_quality(args):
    ref = load_pgm(args.ref)
    test = load_pgm(args.test)
    if args.metric == "psnr":
        value = psnr(ref, test)
        print("inf" if math.isinf(value) else f"{value:.4f}")
    else:
        mode = "windowed" if args.metric == "mssim" else "global"
        print(f"{ssim(ref, test, SsimParams(mode=mode, window_size=args.window)):.8f}")
    return EXIT_OK


def _int_list(text):
    try:
        return [int(v, 0) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from None


def cmd_bench(args):
    host = load_pgm(args.host)
    try:
        schemes = [scheme_name(s) for s in args.schemes.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_bench(host, _int_list(args.payloads), schemes, args.seed, args.repeats, args.mssim)
    write_csv(rows, args.csv)
    for row in rows:
        print(",".join(row.csv_fields()))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="revmark", description="Reversible watermarking of 8-bit PGM images.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    seed = dict(type=lambda v: int(v, 0), default=1, help="nonzero 64-bit seed")

    p = sub.add_parser("embed", help="embed a framed payload into a host image")
    p.add_argument("--scheme", choices=("de", "rrl"), required=True)
    p.add_argument("--host", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--payload", help="file whose bytes are embedded")
    src.add_argument("--random-bits", type=int, help="embed N pseudorandom bits")
    p.add_argument("--seed", **seed)
    p.add_argument("--out", required=True)
    p.add_argument("--record", help="RRL restoration record to write")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the payload and the original image")
    p.add_argument("--scheme", choices=("de", "rrl"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--record", help="RRL restoration record for exact restore")
    p.add_argument("--payload-out", required=True)
    p.add_argument("--restored-out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("quality", help="compare two images")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--metric", choices=("ssim", "mssim", "psnr"), default="ssim")
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(func=cmd_quality)

    p = sub.add_parser("bench", help="payload sweep, written as CSV")
    p.add_argument("--host", required=True)
    p.add_argument("--payloads", default="128,256,512,1024,2048,4096,8192,16384,32768,65536")
    p.add_argument("--schemes", default=",".join(s.lower() for s in SCHEMES))
    p.add_argument("--seed", **{**seed, "default": 0x5EED})
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--csv", required=True)
    p.add_argument("--mssim", action="store_true", help="windowed 8x8 mean SSIM")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"revmark: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WatermarkError as exc:
        name = type(exc).__name__
        if isinstance(exc, MalformedStream) and type(exc) is not MalformedStream:
            name = f"MalformedStream ({name})"
        print(f"revmark: {name}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"revmark: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
