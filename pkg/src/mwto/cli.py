"""Command-line front end: ``mwto {dehaze,simulate,metrics,bench}``.

Exit status is 0 on success and 2 on any usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import bench, hazesim, metrics, pngio
from .pipeline import MAX_LEVELS, DehazeConfig, dehaze

EXIT_OK = 0
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".10g")


def _triple(text: str) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return np.array(vals)


def _sizes(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"input file not found: {path}")
    return p


def _read_rgb(path: Path) -> np.ndarray:
    try:
        return pngio.read_rgb(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot decode {path}: {exc}")


def _dehaze_config(args) -> DehazeConfig:
    try:
        return DehazeConfig(
            levels=args.levels,
            lambda0=args.lambda0,
            lam=args.lam,
            epsilon=args.epsilon,
            mu=args.mu,
            tol=args.tol,
            max_iters=args.max_iters,
            emit_transmission=getattr(args, "emit_transmission", False),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--levels", type=int, default=2, help=f"wavelet levels, 0..{MAX_LEVELS} (default 2)")
    p.add_argument("--lambda0", type=float, default=0.1, help="TV weight scale (default 0.1)")
    p.add_argument("--lam", type=float, default=None, help="fixed TV weight, overrides --lambda0")
    p.add_argument("--epsilon", type=float, default=0.05, help="transmission floor (default 0.05)")
    p.add_argument("--mu", type=float, default=None, help="Bregman penalty (default 2*lam+0.1)")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-iters", type=int, default=100)


def _transmission_path(out: Path) -> Path:
    return out.with_name(out.stem + "_transmission.png")


def _dehaze_one(src: Path, dst: Path, cfg: DehazeConfig) -> str:
    image = _read_rgb(src)
    start = time.perf_counter()
    result = dehaze(image, cfg)
    elapsed = time.perf_counter() - start
    pngio.write_rgb(dst, result.image)
    if cfg.emit_transmission:
        pngio.write_gray8(_transmission_path(dst), result.transmission)
    diag = result.diagnostics
    a = ",".join(format(v, ".4f") for v in result.airlight)
    line = f"{src}: iterations={diag.iterations} airlight={a} lambda={result.coarse.lam:.4g} time={elapsed:.3f}s"
    if not diag.converged:
        line += f"\nwarning: {src}: solver stopped at max_iters (rel change {diag.final_rel_change:.2e})"
    return line


def cmd_dehaze(args) -> int:
    inputs = [_existing(p) for p in args.inputs]
    cfg = _dehaze_config(args)
    out = Path(args.output)
    if len(inputs) == 1 and not out.is_dir():
        jobs = [(inputs[0], out)]
    else:
        if not out.is_dir():
            raise UsageError("with several inputs, -o must be an existing directory")
        jobs = [(p, out / p.name) for p in inputs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(_dehaze_one, *zip(*jobs), [cfg] * len(jobs)))
    else:
        lines = [_dehaze_one(src, dst, cfg) for src, dst in jobs]
    for line in lines:
        for part in line.splitlines():
            stream = sys.stderr if part.startswith("warning:") else sys.stdout
            print(part, file=stream)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if (args.t is None) == (args.depth is None):
        raise UsageError("give exactly one of --t or --depth")
    clear = _read_rgb(_existing(args.input))
    rows, cols = clear.shape[:2]
    if args.t is not None:
        if not 0.0 <= args.t <= 1.0:
            raise UsageError("--t must lie in [0, 1]")
        t = np.full((rows, cols), args.t)
    else:
        if args.beta is None or args.beta <= 0:
            raise UsageError("--depth needs a positive --beta")
        try:
            gray = pngio.read_gray16(_existing(args.depth))
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot decode {args.depth}: {exc}")
        if gray.shape != (rows, cols):
            raise UsageError(f"depth map {gray.shape} does not match image {(rows, cols)}")
        try:
            depth = hazesim.depth_from_gray16(gray, args.dmin, args.dmax)
        except ValueError as exc:
            raise UsageError(str(exc))
        t = hazesim.transmission_from_depth(depth, args.beta)
    a = args.airlight
    if np.any(a <= 0) or np.any(a > 1):
        raise UsageError("airlight components must lie in (0, 1]")
    hazy = hazesim.apply_haze(clear, t, a)
    pngio.write_rgb(args.output, hazy)
    if args.t_out:
        pngio.write_gray8(args.t_out, t)
    print(f"{args.output}: t in [{t.min():.4f}, {t.max():.4f}]")
    return EXIT_OK


def cmd_metrics(args) -> int:
    ref = _read_rgb(_existing(args.reference))
    test = _read_rgb(_existing(args.test))
    hazy = _read_rgb(_existing(args.hazy)) if args.hazy else None
    if ref.shape != test.shape or (hazy is not None and hazy.shape != test.shape):
        raise UsageError("image dimensions differ")
    try:
        report = metrics.reference_report(ref, test)
    except ValueError as exc:
        raise UsageError(str(exc))
    header = ["path", "mse", "psnr", "ssim"]
    row = [str(args.test), _fmt(report.mse), _fmt(report.psnr), _fmt(report.ssim)]
    if hazy is not None:
        vis = metrics.hautiere(hazy, test, threshold=args.threshold)
        header += ["e", "sigma", "rbar"]
        row += [_fmt(vis.e), _fmt(vis.sigma), _fmt(vis.rbar)]
    _emit_csv(args.csv, header, [row])
    return EXIT_OK


def cmd_bench(args) -> int:
    if not args.sizes:
        raise UsageError("empty size list")
    if args.repetitions < 1:
        raise UsageError("--repetitions must be positive")
    cfg = _dehaze_config(args)
    try:
        report = bench.run_bench(args.sizes, args.repetitions, cfg, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = [[str(r.size), _fmt(r.mean_seconds), _fmt(r.min_seconds)] for r in report.rows]
    _emit_csv(args.csv, ["size", "mean_seconds", "min_seconds"], rows)
    print(f"log-log slope (time vs side length): {report.slope:.3f}", file=sys.stderr)
    return EXIT_OK


def _emit_csv(path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path:
        Path(path).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwto", description="Wavelet-domain single image dehazing")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dehaze", help="remove haze from PNG images")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True, help="output PNG, or directory for several inputs")
    p.add_argument("--emit-transmission", action="store_true", help="also write <stem>_transmission.png")
    p.add_argument("--jobs", type=int, default=1)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_dehaze)

    p = sub.add_parser("simulate", help="add synthetic haze to a clear PNG")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--t", type=float, default=None, help="constant transmission")
    p.add_argument("--depth", default=None, help="16-bit grayscale depth PNG")
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--dmin", type=float, default=0.0)
    p.add_argument("--dmax", type=float, default=1.0)
    p.add_argument("--airlight", type=_triple, default=np.ones(3))
    p.add_argument("--t-out", default=None, help="write the transmission map as 8-bit PNG")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("metrics", help="compare a restored image against a reference")
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("hazy", nargs="?", default=None)
    p.add_argument("--threshold", type=float, default=metrics.EDGE_THRESHOLD)
    p.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="time the pipeline over image sizes")
    p.add_argument("--sizes", type=_sizes, default=[256, 512, 1024, 2048])
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
