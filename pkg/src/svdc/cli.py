"""Command-line surface: svdc compress | decompress | metrics | sweep | bench."""

import argparse
import math
import sys
import warnings
from pathlib import Path

from . import codec, container, metrics
from .ppm import load_image, save_image
from .sweep import (
    DEFAULT_K_VALUES,
    DEFAULT_V_VALUES,
    SCHEME_LABELS,
    SweepSpec,
    run_sweep,
    write_csv,
)


def _int_list(text):
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="svdc",
        description="Lossy color-image codec: truncated SVD of the luma plane "
        "at rank k and of the subsampled chroma planes at rank k'.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="encode a raster into a .svdc file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--k", type=int, required=True, help="luma (or shared RGB) rank")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k-prime", type=int, help="chroma rank (<= k)")
    group.add_argument("--v", type=int, help="chroma divisor: k' = ceil(k / v) (default 2)")
    p.add_argument("--scheme", choices=("ycbcr", "rgb"), default="ycbcr")
    p.add_argument("--no-subsample", action="store_true", help="keep chroma at full resolution")

    p = sub.add_parser("decompress", help="decode a .svdc file into a raster")
    p.add_argument("input")
    p.add_argument("output")

    p = sub.add_parser("metrics", help="distortion and energy of a restored raster")
    p.add_argument("original")
    p.add_argument("restored")
    p.add_argument("--peak", choices=("image-max", "255"), default="image-max")

    p = sub.add_parser("sweep", help="rate/distortion grid over k and v, CSV out")
    p.add_argument("images", nargs="+")
    p.add_argument("--k", type=_int_list, default=DEFAULT_K_VALUES, metavar="LIST")
    p.add_argument("--v", type=_int_list, default=DEFAULT_V_VALUES, metavar="LIST")
    p.add_argument("--schemes", default="ycbcr",
                   help=f"comma-separated subset of {SCHEME_LABELS}")
    p.add_argument("--trials", type=int, default=1, help="timed encodes per cell")
    p.add_argument("--csv", required=True, metavar="PATH")
    p.add_argument("--svg-dir", metavar="PATH", help="also emit line charts")
    p.add_argument("--no-subsample", action="store_true")
    p.add_argument("--peak", choices=("image-max", "255"), default="image-max")

    p = sub.add_parser("bench", help="encode speed ratio vs the RGB baseline")
    p.add_argument("images", nargs="+")
    p.add_argument("--k", type=int, default=40)
    p.add_argument("--v", type=int, default=4)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--no-subsample", action="store_true")
    return parser


def _print_warnings(caught):
    for item in caught:
        print(f"warning: {item.message}", file=sys.stderr)


def _cmd_compress(args):
    img = load_image(args.input)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", codec.RankThresholdWarning)
        if args.scheme == "rgb":
            compressed = codec.compress_rgb_baseline(img, args.k)
        else:
            if args.k_prime is not None:
                k_prime = args.k_prime
            else:
                k_prime = codec.k_prime_for(args.k, args.v if args.v is not None else 2)
            s = 1 if args.no_subsample else 2
            compressed = codec.compress(img, args.k, k_prime, subsample_factor=s)
    _print_warnings(caught)
    data = container.serialize(compressed)
    Path(args.output).write_bytes(data)
    byte_ratio = (3 * img.width * img.height) / len(data)
    print(
        f"k={compressed.k} k_prime={compressed.k_prime} "
        f"coeff_ratio={codec.coefficient_ratio(compressed):.3f} "
        f"byte_ratio={byte_ratio:.3f}"
    )
    return 0


def _cmd_decompress(args):
    compressed = container.read_svdc(args.input)
    save_image(args.output, codec.decompress(compressed))
    return 0


def _cmd_metrics(args):
    original = load_image(args.original)
    restored = load_image(args.restored)
    peak = args.peak if args.peak == "image-max" else 255
    err = metrics.eqm(original, restored)
    snr = metrics.psnr(original, restored, peak=peak)
    energy_pct = 100.0 * metrics.energy_ratio(original, restored)
    snr_text = "inf" if math.isinf(snr) and snr > 0 else f"{snr:.6f}"
    print(f"eqm={err:.6f}")
    print(f"psnr_db={snr_text}")
    print(f"energy_pct={energy_pct:.6f}")
    print(f"csv: {err:.6f},{snr_text},{energy_pct:.6f}")
    return 0


def _cmd_sweep(args):
    schemes = tuple(s.strip() for s in args.schemes.split(",") if s.strip())
    spec = SweepSpec(
        images=tuple(args.images),
        k_values=args.k,
        v_values=args.v,
        schemes=schemes,
        trials=args.trials,
        subsample_factor=1 if args.no_subsample else 2,
        peak=args.peak if args.peak == "image-max" else 255,
    )
    rows = run_sweep(spec)
    write_csv(args.csv, rows)
    if args.svg_dir:
        from .svgplot import write_sweep_charts

        write_sweep_charts(rows, args.svg_dir)
    failures = sum(row.failed for row in rows)
    print(f"wrote {len(rows)} rows to {args.csv} ({failures} errors)")
    return 1 if failures else 0


def _cmd_bench(args):
    k_prime = codec.k_prime_for(args.k, args.v)
    s = 1 if args.no_subsample else 2
    lines = []
    ratios = []
    for path in args.images:
        img = load_image(path)
        ratio = metrics.speed_ratio(
            img, args.k, k_prime, trials=args.trials, subsample_factor=s
        )
        ratios.append(ratio)
        name = Path(path).stem
        lines.append((name, ratio))
        print(f"{name}: speed_ratio={ratio:.3f}")
    gmean = math.exp(sum(math.log(r) for r in ratios) / len(ratios))
    print(f"geometric_mean={gmean:.3f}")
    if args.csv:
        text = "image,speed_ratio\n" + "".join(
            f"{name},{ratio:.6f}\n" for name, ratio in lines
        )
        Path(args.csv).write_text(text, encoding="ascii")
    return 0


_HANDLERS = {
    "compress": _cmd_compress,
    "decompress": _cmd_decompress,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
    "bench": _cmd_bench,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
