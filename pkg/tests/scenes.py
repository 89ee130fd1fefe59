"""Seeded synthetic scenes for round-trip tests."""

from __future__ import annotations

import numpy as np

T_LEVELS = np.round(np.arange(0.4, 0.91, 0.1), 2)


def dark_channel_scene(rng, rows, cols, block=16, dark_max=0.03, lo=0.1, hi=0.9):
    """Piecewise-constant colors on aligned tiles; every tile has one near-black channel."""
    nr, nc = -(-rows // block), -(-cols // block)
    colors = rng.uniform(lo, hi, (nr, nc, 3))
    dark = rng.integers(0, 3, (nr, nc))
    vals = rng.uniform(0.0, dark_max, (nr, nc))
    for i in range(nr):
        for j in range(nc):
            colors[i, j, dark[i, j]] = vals[i, j]
    scene = np.kron(colors, np.ones((block, block, 1)))
    return scene[:rows, :cols]


def block_transmission(rng, rows, cols, block=32, values=T_LEVELS):
    nr, nc = -(-rows // block), -(-cols // block)
    tiles = rng.choice(values, (nr, nc))
    return np.kron(tiles, np.ones((block, block)))[:rows, :cols]


def round_trip_fixture(seed, size=128):
    """(clear, transmission) pair: t block-constant in 0.4..0.9, each J tile has a dark channel."""
    rng = np.random.default_rng(seed)
    clear = dark_channel_scene(rng, size, size)
    t = block_transmission(rng, size, size)
    return clear, t


def smooth_scene(rng, rows, cols):
    """Low-frequency color field with a dark channel, for cross-level checks."""
    y, x = np.mgrid[0:rows, 0:cols] / max(rows, cols)
    phase = rng.uniform(0, 2 * np.pi, 3)
    img = np.stack([0.5 + 0.35 * np.sin(2 * np.pi * (x + y) + p) for p in phase], axis=2)
    img[:, :, int(rng.integers(3))] *= 0.05
    return img
