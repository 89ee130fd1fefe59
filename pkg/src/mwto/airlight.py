"""Atmospheric light estimation: per-channel max of a 3x3 eroded image."""

from __future__ import annotations

import numpy as np

A_MIN = 0.5


def erode3(plane: np.ndarray) -> np.ndarray:
    """3x3 minimum filter with replicated borders (separable)."""
    q = np.pad(np.asarray(plane, dtype=np.float64), 1, mode="edge")
    rows = np.minimum(np.minimum(q[:-2], q[1:-1]), q[2:])
    return np.minimum(np.minimum(rows[:, :-2], rows[:, 1:-1]), rows[:, 2:])


def estimate_airlight(image, a_min: float = A_MIN) -> np.ndarray:
    """Return ``(a_r, a_g, a_b)``: brightest value surviving a 3x3 min filter.

    Each estimate is clamped to ``[a_min, 1]``; dark scenes would otherwise
    hand the solver a near-zero divisor.
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (rows, cols, 3) image")
    if img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError(f"airlight needs at least a 3x3 image, got {img.shape[0]}x{img.shape[1]}")
    a = np.array([erode3(img[:, :, c]).max() for c in range(3)])
    return np.clip(a, a_min, 1.0)
