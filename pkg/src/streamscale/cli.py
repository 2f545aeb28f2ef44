"""Command-line front end: scale PGM images, compare outputs, export
coefficient LUTs, and run the pipeline simulator.

Exit codes: 0 success, 2 usage error, 3 malformed PGM, 4 I/O failure,
5 dimension mismatch between compared images.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import metrics, pipesim
from .fixedpoint import QFormat, quantize_weights
from .imagecore import Image, PgmError, load_pgm, save_pgm
from .kernel import bicubic_weights, bilinear_weights, phase_table
from .stream import MODE_EXACT, MODE_FIXED, ScaleJob, scale_image

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PGM = 3
EXIT_IO = 4
EXIT_DIMS = 5

DEFAULT_FRAC_BITS = 8


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _frac_bits(text: str) -> int:
    value = int(text)
    if not 4 <= value <= 16:
        raise argparse.ArgumentTypeError(f"frac-bits must be in 4..16, got {text}")
    return value


def _add_scale_flags(p: argparse.ArgumentParser, with_mode: bool = True) -> None:
    p.add_argument("--method", required=True, choices=("bilinear", "bicubic"))
    if with_mode:
        p.add_argument("--mode", required=True, choices=(MODE_EXACT, MODE_FIXED))
    p.add_argument("--num", required=True, type=_positive_int, help="scale numerator")
    p.add_argument("--den", required=True, type=_positive_int, help="scale denominator")
    p.add_argument("--frac-bits", type=_frac_bits, default=None,
                   help="fractional bits for fixed mode (default 8)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamscale",
        description="Streaming bilinear/bicubic image scaler with a fixed-point hardware model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scale", help="scale a PGM image through the streaming engine")
    p.add_argument("input", help="input PGM path")
    p.add_argument("output", help="output PGM path")
    _add_scale_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compare", help="report PSNR and SSIM of two PGM images")
    p.add_argument("ref", help="reference PGM path")
    p.add_argument("test", help="test PGM path")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("coeffs", help="export the quantized coefficient LUT")
    p.add_argument("--method", required=True, choices=("bilinear", "bicubic"))
    p.add_argument("--num", required=True, type=_positive_int)
    p.add_argument("--den", required=True, type=_positive_int)
    p.add_argument("--frac-bits", type=_frac_bits, default=DEFAULT_FRAC_BITS)
    p.add_argument("--format", required=True, choices=("csv", "memh"))
    p.add_argument("--output", default=None, help="write here instead of stdout")

    p = sub.add_parser("bench", help="predicted cycles vs measured throughput")
    p.add_argument("--width", required=True, type=_positive_int, help="input width")
    p.add_argument("--height", required=True, type=_positive_int, help="input height")
    _add_scale_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _resolve_frac_bits(parser: argparse.ArgumentParser, args) -> int:
    if args.mode == MODE_EXACT:
        if args.frac_bits is not None:
            parser.error("--frac-bits is only valid with --mode fixed")
        return 0
    return args.frac_bits if args.frac_bits is not None else DEFAULT_FRAC_BITS


def _emit_report(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        cleaned = {
            k: (None if isinstance(v, float) and not math.isfinite(v) else v)
            for k, v in report.items()
        }
        out.write(json.dumps(cleaned) + "\n")
    else:
        for k, v in report.items():
            out.write(f"{k} {v}\n")


def _load(path: str) -> Image:
    return load_pgm(path)


def cmd_scale(args, frac_bits: int) -> int:
    try:
        img = _load(args.input)
    except PgmError as exc:
        print(f"streamscale: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PGM
    except OSError as exc:
        print(f"streamscale: {exc}", file=sys.stderr)
        return EXIT_IO
    job = ScaleJob.make(args.method, args.mode, args.num, args.den,
                        img.width, img.height, frac_bits or DEFAULT_FRAC_BITS)
    t0 = time.perf_counter()
    result = scale_image(img, job)
    elapsed = time.perf_counter() - t0
    try:
        save_pgm(args.output, result)
    except OSError as exc:
        print(f"streamscale: {exc}", file=sys.stderr)
        return EXIT_IO
    report = {
        "in_width": img.width,
        "in_height": img.height,
        "out_width": result.width,
        "out_height": result.height,
        "method": args.method,
        "mode": args.mode,
        "frac_bits": frac_bits if args.mode == MODE_FIXED else None,
        "wall_seconds": round(elapsed, 6),
    }
    _emit_report(report, args.format)
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        ref = _load(args.ref)
        test = _load(args.test)
    except PgmError as exc:
        print(f"streamscale: {exc}", file=sys.stderr)
        return EXIT_PGM
    except OSError as exc:
        print(f"streamscale: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        report = metrics.quality_report(ref, test, args.ref, args.test)
    except ValueError as exc:
        print(f"streamscale: {exc}", file=sys.stderr)
        return EXIT_DIMS
    _emit_report(
        {
            "ref": report.ref,
            "test": report.test,
            "width": report.width,
            "height": report.height,
            "psnr_db": report.psnr_db,
            "ssim": report.ssim,
        },
        args.format,
    )
    return EXIT_OK


def _csd_string(csd) -> str:
    if not csd:
        return "0"
    return "".join(f"{'+' if s > 0 else '-'}2^{sh}" for s, sh in reversed(csd))


def _coeff_rows(method: str, num: int, den: int, frac_bits: int):
    """One row per (phase, tap) of the canonical LUT for scale num/den."""
    g = math.gcd(num, den)
    num, den = num // g, den // g
    table = phase_table(den, num)
    build = bicubic_weights if method == "bicubic" else bilinear_weights
    q = QFormat(frac_bits)
    for phase_index in range(table.period):
        dx = table.dx_values[phase_index]
        wv = build(dx)
        fw = quantize_weights(wv, q)
        for tap_index, (exact, tap) in enumerate(zip(wv.taps, fw.taps)):
            yield phase_index, dx, tap_index, exact, tap


def cmd_coeffs(args) -> int:
    lines = []
    if args.format == "csv":
        lines.append("phase,dx,tap,exact,raw,csd")
        for phase_index, dx, tap_index, exact, tap in _coeff_rows(
            args.method, args.num, args.den, args.frac_bits
        ):
            lines.append(
                f"{phase_index},{dx.numerator}/{dx.denominator},{tap_index},"
                f"{exact.numerator}/{exact.denominator},{tap.raw},{_csd_string(tap.csd)}"
            )
    else:
        width_bits = args.frac_bits + 2
        digits = (width_bits + 3) // 4
        mask = (1 << width_bits) - 1
        for _, _, _, _, tap in _coeff_rows(args.method, args.num, args.den, args.frac_bits):
            lines.append(f"{tap.raw & mask:0{digits}x}")
    text = "\n".join(lines) + "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"streamscale: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _ramp_image(width: int, height: int) -> Image:
    data = bytes((x + y) & 0xFF for y in range(height) for x in range(width))
    return Image(width, height, data)


def cmd_bench(args, frac_bits: int) -> int:
    job = ScaleJob.make(args.method, args.mode, args.num, args.den,
                        args.width, args.height, frac_bits or DEFAULT_FRAC_BITS)
    predicted = pipesim.simulate(job)
    img = _ramp_image(args.width, args.height)
    t0 = time.perf_counter()
    scale_image(img, job)
    elapsed = time.perf_counter() - t0
    report = {
        "method": args.method,
        "mode": args.mode,
        "in_width": job.in_width,
        "in_height": job.in_height,
        "out_width": job.out_width,
        "out_height": job.out_height,
        "fill_latency": predicted.fill_latency,
        "total_cycles": predicted.total_cycles,
        "outputs": predicted.outputs,
        "steady_state_rate": predicted.steady_state_rate,
        "adder_count": predicted.adder_count,
        "register_count": predicted.register_count,
        "wall_seconds": round(elapsed, 6),
        "mpix_per_s": round(predicted.outputs / elapsed / 1e6, 3) if elapsed > 0 else None,
    }
    _emit_report(report, args.format)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("scale", "bench"):
            frac_bits = _resolve_frac_bits(parser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "scale":
        return cmd_scale(args, frac_bits)
    if args.command == "compare":
        return cmd_compare(args)
    if args.command == "coeffs":
        return cmd_coeffs(args)
    return cmd_bench(args, frac_bits)


if __name__ == "__main__":
    sys.exit(main())
