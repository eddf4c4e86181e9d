"""Command-line interface.

    cadenoise add-noise IN OUT --density 0.3 [--salt-fraction 0.5] [--seed 0]
    cadenoise denoise IN OUT [--iterations N | --auto] [--noise-level F] [--grayscale]
    cadenoise metrics REFERENCE RESTORED
    cadenoise benchmark REF [REF ...] [--densities ...] [--runs R] [--seed S]
                        [--filters ca,smf] --out report.csv

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .benchmark import FILTERS, ITERATION_MODES, STANDARD_DENSITIES, image_digest, run_benchmark, write_report
from .ca import AUTO, DenoiseConfig, denoise, resolve_iterations
from .grid import GrayImage
from .imagefile import ImageFormatError, read_image, to_grayscale, write_image
from .metrics import format_db, psnr, ssim
from .noise import NoiseSpec, corrupt_array

log = logging.getLogger("cadenoise")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _fraction_list(text: str) -> list[float]:
    return [_fraction(t) for t in text.split(",") if t.strip()]


def _filter_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in FILTERS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown filter(s) {', '.join(bad) or '(none)'}; choose from {', '.join(FILTERS)}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cadenoise", description="Salt-and-pepper noise removal with a 2D cellular automaton.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("add-noise", help="corrupt an image with salt-and-pepper noise")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--density", type=_fraction, required=True)
    p.add_argument("--salt-fraction", type=_fraction, default=0.5)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_add_noise)

    p = sub.add_parser("denoise", help="restore an image with the CA filter")
    p.add_argument("input")
    p.add_argument("output")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--iterations", type=_positive_int)
    group.add_argument("--auto", action="store_true", help="derive the step count from the noise level (default)")
    p.add_argument("--noise-level", type=_fraction, help="noise density in [0, 1] to use instead of estimating it")
    p.add_argument("--grayscale", action="store_true", help="convert RGB input to grayscale first")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("metrics", help="print PSNR and SSIM of RESTORED against REFERENCE")
    p.add_argument("reference")
    p.add_argument("restored")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("benchmark", help="density sweep with averaged PSNR/SSIM, written as CSV")
    p.add_argument("references", nargs="+")
    p.add_argument("--densities", type=_fraction_list, default=list(STANDARD_DENSITIES))
    p.add_argument("--runs", type=_positive_int, default=100)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--filters", type=_filter_list, default=list(FILTERS))
    p.add_argument("--salt-fraction", type=_fraction, default=0.5)
    p.add_argument(
        "--iteration-mode",
        choices=ITERATION_MODES,
        default="nominal",
        help="CA step count from the injected density (nominal) or estimated from the noisy image (auto)",
    )
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_benchmark)
    return parser


def cmd_add_noise(args) -> int:
    arr = read_image(args.input)
    spec = NoiseSpec(args.density, args.salt_fraction, args.seed)
    write_image(args.output, corrupt_array(arr, spec))
    return EXIT_OK


def cmd_denoise(args) -> int:
    arr = read_image(args.input)
    if args.grayscale:
        arr = to_grayscale(arr)
    cfg = DenoiseConfig(
        iterations=args.iterations if args.iterations else AUTO,
        noise_level=args.noise_level,
        workers=args.workers,
    )
    channels = [arr] if arr.ndim == 2 else [arr[..., c] for c in range(arr.shape[2])]
    restored, counts = [], []
    for channel in channels:
        img = GrayImage(channel)
        n = resolve_iterations(img, cfg)
        counts.append(n)
        log.debug("channel %d: %d iteration(s)", len(counts) - 1, n)
        restored.append(denoise(img, DenoiseConfig(iterations=n, workers=cfg.workers)).array)
    out = restored[0] if arr.ndim == 2 else np.stack(restored, axis=-1)
    write_image(args.output, out)
    print("iterations=" + ",".join(str(n) for n in counts))
    return EXIT_OK


def _load_pair(ref_path, other_path):
    a, b = read_image(ref_path), read_image(other_path)
    if a.ndim != b.ndim:
        a, b = to_grayscale(a), to_grayscale(b)
    if a.shape != b.shape:
        raise ImageFormatError(
            f"dimension mismatch: {ref_path} is {a.shape}, {other_path} is {b.shape}"
        )
    return a, b


def cmd_metrics(args) -> int:
    a, b = _load_pair(args.reference, args.restored)
    if a.ndim == 2:
        p, s = psnr(GrayImage(a), GrayImage(b)), ssim(GrayImage(a), GrayImage(b))
    else:
        # pooled MSE over channels, mean of per-channel SSIM
        flat_a = GrayImage(a.reshape(a.shape[0], -1))
        flat_b = GrayImage(b.reshape(b.shape[0], -1))
        p = psnr(flat_a, flat_b)
        s = float(np.mean([ssim(GrayImage(a[..., c]), GrayImage(b[..., c])) for c in range(a.shape[2])]))
    print(f"psnr_db={format_db(p)} ssim={s!r}")
    return EXIT_OK


def cmd_benchmark(args) -> int:
    out_dir = Path(args.out).resolve().parent
    if not out_dir.is_dir():
        raise FileNotFoundError(f"output directory does not exist: {out_dir}")
    references = {}
    for path in args.references:
        arr = to_grayscale(read_image(path))
        name = Path(path).stem
        if name in references:
            raise UsageError(f"duplicate image name {name!r}")
        references[name] = GrayImage(arr)
    rows = run_benchmark(
        references,
        densities=args.densities,
        runs=args.runs,
        seed=args.seed,
        filters=args.filters,
        salt_fraction=args.salt_fraction,
        iteration_mode=args.iteration_mode,
        jobs=args.jobs,
    )
    write_report(
        rows,
        args.out,
        metadata={
            "salt_fraction": args.salt_fraction,
            "iteration_mode": args.iteration_mode,
            "images": {name: {"sha256_pixels": image_digest(img), "shape": list(img.shape)}
                       for name, img in references.items()},
        },
    )
    for r in rows:
        print(
            f"{r.image_name:>12} {r.density:4.2f} {r.filter:>4} it={r.iterations_used:<5g} "
            f"psnr={format_db(r.mean_psnr_db):>9.9} ssim={r.mean_ssim:.4f} {r.mean_wall_time_ms:8.2f} ms"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cadenoise: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImageFormatError as exc:
        print(f"cadenoise: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"cadenoise: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"cadenoise: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
