"""PNG boundary: 8-bit RGB in/out, 8-bit gray transmission, 16-bit gray depth."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .imagecore import normalize_bytes, to_bytes


def read_rgb(path) -> np.ndarray:
    with Image.open(path) as im:
        if im.format != "PNG":
            raise ValueError(f"{path}: not a PNG file")
        rgb = im.convert("RGB")
        rows, cols = rgb.height, rgb.width
        return normalize_bytes(rgb.tobytes(), rows, cols)


def write_rgb(path, image: np.ndarray) -> None:
    Image.fromarray(to_bytes(image), mode="RGB").save(Path(path), format="PNG")


def write_gray8(path, plane: np.ndarray) -> None:
    Image.fromarray(to_bytes(plane), mode="L").save(Path(path), format="PNG")


def read_gray16(path) -> np.ndarray:
    """Gray levels in ``[0, 65535]``; 8-bit files are widened by 257."""
    with Image.open(path) as im:
        if im.format != "PNG":
            raise ValueError(f"{path}: not a PNG file")
        if im.mode in ("I;16", "I;16B", "I;16L", "I"):
            return np.asarray(im, dtype=np.float64)
        return np.asarray(im.convert("L"), dtype=np.float64) * 257.0


def write_gray16(path, levels: np.ndarray) -> None:
    arr = np.clip(np.rint(levels), 0, 65535).astype(np.uint16)
    Image.fromarray(arr).save(Path(path), format="PNG")
