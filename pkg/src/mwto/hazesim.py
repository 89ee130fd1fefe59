"""Forward haze synthesis: I = J * t + a * (1 - t) with t = exp(-beta * d)."""

from __future__ import annotations

import numpy as np


def transmission_from_depth(depth, beta: float, floor: float | None = None) -> np.ndarray:
    d = np.asarray(depth, dtype=np.float64)
    if beta <= 0:
        raise ValueError("beta must be positive")
    if np.any(d < 0):
        raise ValueError("depth must be non-negative")
    t = np.exp(-beta * d)
    if floor is not None:
        t = np.maximum(t, floor)
    return t


def depth_from_gray16(gray, d_min: float, d_max: float) -> np.ndarray:
    """Map 16-bit gray levels linearly onto ``[d_min, d_max]``."""
    if d_max < d_min:
        raise ValueError("d_max must not be smaller than d_min")
    g = np.asarray(gray, dtype=np.float64) / 65535.0
    return d_min + (d_max - d_min) * g


def apply_haze(clear, t, airlight) -> np.ndarray:
    j = np.asarray(clear, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    a = np.asarray(airlight, dtype=np.float64).reshape(1, 1, 3)
    if j.ndim != 3 or j.shape[2] != 3:
        raise ValueError("expected an (rows, cols, 3) clear image")
    if t.shape != j.shape[:2]:
        raise ValueError(f"transmission shape {t.shape} does not match image {j.shape[:2]}")
    tt = t[:, :, None]
    return j * tt + a * (1.0 - tt)


def make_block_constant_t(rows: int, cols: int, block: int, seed=None,
                          low: float = 0.2, high: float = 1.0) -> np.ndarray:
    """Random transmission map constant on aligned ``block x block`` tiles."""
    if block < 1 or block & (block - 1):
        raise ValueError("block must be a power of two")
    if rows % block or cols % block:
        raise ValueError(f"{rows}x{cols} is not divisible by block {block}")
    rng = np.random.default_rng(seed)
    tiles = rng.uniform(low, high, size=(rows // block, cols // block))
    return np.kron(tiles, np.ones((block, block)))
