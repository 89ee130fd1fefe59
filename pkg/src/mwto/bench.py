"""Runtime scaling of the dehazing pipeline against image side length."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .hazesim import apply_haze, make_block_constant_t
from .pipeline import DehazeConfig, dehaze


@dataclass(frozen=True)
class BenchRow:
    size: int
    mean_seconds: float
    min_seconds: float


@dataclass(frozen=True)
class BenchReport:
    rows: list[BenchRow]
    slope: float  # log-log slope of mean time against side length


def synthetic_hazy(size: int, seed: int = 0) -> np.ndarray:
    """Blocky random scene hazed with a 32x32-tile transmission map."""
    rng = np.random.default_rng(seed)
    tile = 16
    n = -(-size // tile)
    colors = rng.uniform(0.0, 1.0, (n, n, 3))
    clear = np.kron(colors, np.ones((tile, tile, 1)))[:size, :size]
    block = 32
    m = -(-size // block) * block
    t = make_block_constant_t(m, m, block, seed=seed + 1, low=0.4, high=0.9)[:size, :size]
    return apply_haze(clear, t, np.ones(3))


def loglog_slope(sizes, seconds) -> float:
    if len(sizes) < 2:
        return float("nan")
    return float(np.polyfit(np.log(sizes), np.log(seconds), 1)[0])


def run_bench(sizes, repetitions: int = 3, config: DehazeConfig | None = None, seed: int = 0) -> BenchReport:
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise ValueError("no sizes given")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    if any(s < 4 for s in sizes):
        raise ValueError("sizes must be at least 4")
    cfg = config or DehazeConfig()
    # compile the solver kernels outside the timed region
    dehaze(synthetic_hazy(16, seed), cfg)
    rows = []
    for size in sizes:
        image = synthetic_hazy(size, seed)
        times = []
        for _ in range(repetitions):
            start = time.perf_counter()
            dehaze(image, cfg)
            times.append(time.perf_counter() - start)
        rows.append(BenchRow(size, float(np.mean(times)), float(np.min(times))))
    slope = loglog_slope([r.size for r in rows], [r.mean_seconds for r in rows])
    return BenchReport(rows, slope)
