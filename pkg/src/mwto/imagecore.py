"""Image containers and the padding/cropping helpers shared by the pipeline.

Planes are 2-D float64 arrays; a color image is an ``(rows, cols, 3)`` float64
array in RGB order with values in ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_plane(values) -> np.ndarray:
    plane = np.asarray(values, dtype=np.float64)
    if plane.ndim != 2 or plane.shape[0] < 1 or plane.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {plane.shape}")
    if not np.all(np.isfinite(plane)):
        raise ValueError("plane contains non-finite values")
    return plane


def as_color_image(values) -> np.ndarray:
    img = np.asarray(values, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"expected an (rows, cols, 3) image, got shape {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains non-finite values")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("image values must lie in [0, 1]")
    return img


@dataclass(frozen=True)
class CropBox:
    orig_rows: int
    orig_cols: int
    pad_bottom: int = 0
    pad_right: int = 0


def normalize_bytes(raw, rows: int, cols: int) -> np.ndarray:
    """Convert an interleaved 8-bit RGB buffer into a unit-range color image."""
    buf = np.frombuffer(bytes(raw), dtype=np.uint8) if not isinstance(raw, np.ndarray) else raw.ravel()
    if rows < 1 or cols < 1 or buf.size != rows * cols * 3:
        raise ValueError(f"buffer of {buf.size} bytes does not match {rows}x{cols}x3")
    return buf.astype(np.float64).reshape(rows, cols, 3) / 255.0


def to_bytes(image: np.ndarray) -> np.ndarray:
    """Quantize a unit-range array to uint8 (round half to even)."""
    return np.rint(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)


def _padded(n: int, levels: int) -> int:
    block = 1 << levels
    return -(-n // block) * block


def pad_dyadic(image: np.ndarray, levels: int) -> tuple[np.ndarray, CropBox]:
    """Mirror-pad rows and columns up to the next multiple of ``2**levels``.

    Works on planes and color images alike.
    """
    if levels < 0:
        raise ValueError("levels must be non-negative")
    image = np.asarray(image, dtype=np.float64)
    rows, cols = image.shape[:2]
    pad_r = _padded(rows, levels) - rows
    pad_c = _padded(cols, levels) - cols
    box = CropBox(rows, cols, pad_r, pad_c)
    if pad_r == 0 and pad_c == 0:
        return image.copy(), box
    # a single symmetric pad cannot reach past the array length (e.g. 1x1 -> 4x4)
    out = image
    while out.shape[0] < rows + pad_r or out.shape[1] < cols + pad_c:
        need_r = min(rows + pad_r - out.shape[0], out.shape[0])
        need_c = min(cols + pad_c - out.shape[1], out.shape[1])
        widths = [(0, need_r), (0, need_c)] + [(0, 0)] * (image.ndim - 2)
        out = np.pad(out, widths, mode="symmetric")
    return out, box


def crop(image: np.ndarray, box: CropBox) -> np.ndarray:
    image = np.asarray(image)
    if box.orig_rows > image.shape[0] or box.orig_cols > image.shape[1]:
        raise ValueError(
            f"crop box {box.orig_rows}x{box.orig_cols} exceeds image {image.shape[0]}x{image.shape[1]}"
        )
    return image[: box.orig_rows, : box.orig_cols].copy()


def clamp_unit(plane) -> np.ndarray:
    return np.clip(np.asarray(plane, dtype=np.float64), 0.0, 1.0)
