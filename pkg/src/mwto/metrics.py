"""Full-reference (MSE, PSNR, SSIM) and no-reference visibility metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])
EDGE_THRESHOLD = 0.05
SSIM_K1 = 0.01
SSIM_K2 = 0.03
SSIM_SIGMA = 1.5
SSIM_WIN = 11


@dataclass(frozen=True)
class VisibilityReport:
    e: float
    sigma: float
    rbar: float


@dataclass(frozen=True)
class ReferenceReport:
    mse: float
    psnr: float
    ssim: float


def _pair(reference, test) -> tuple[np.ndarray, np.ndarray]:
    ref = np.asarray(reference, dtype=np.float64)
    tst = np.asarray(test, dtype=np.float64)
    if ref.shape != tst.shape:
        raise ValueError(f"image shapes differ: {ref.shape} vs {tst.shape}")
    return ref, tst


def luma(image) -> np.ndarray:
    img = np.asarray(image, dtype=np.float64)
    if img.ndim == 2:
        return img
    return img @ LUMA_WEIGHTS


def intensity(image) -> np.ndarray:
    """Equal-weight channel mean; symmetric under channel permutations."""
    img = np.asarray(image, dtype=np.float64)
    if img.ndim == 2:
        return img
    return img.mean(axis=2)


def mse(reference, test) -> float:
    ref, tst = _pair(reference, test)
    return float(np.mean((ref - tst) ** 2))


def psnr(reference, test) -> float:
    err = mse(reference, test)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def ssim(reference, test) -> float:
    """Mean SSIM of the luma planes (Gaussian 11x11 window, sigma 1.5).

    Border pixels within half a window of the edge are excluded from the mean.
    """
    ref, tst = _pair(reference, test)
    x, y = luma(ref), luma(tst)
    if x.shape[0] < SSIM_WIN or x.shape[1] < SSIM_WIN:
        raise ValueError(f"SSIM needs images of at least {SSIM_WIN}x{SSIM_WIN}")
    radius = SSIM_WIN // 2

    def blur(z):
        return ndimage.gaussian_filter(z, SSIM_SIGMA, truncate=radius / SSIM_SIGMA)

    c1 = SSIM_K1**2
    c2 = SSIM_K2**2
    mx, my = blur(x), blur(y)
    vx = blur(x * x) - mx * mx
    vy = blur(y * y) - my * my
    cxy = blur(x * y) - mx * my
    num = (2 * mx * my + c1) * (2 * cxy + c2)
    den = (mx * mx + my * my + c1) * (vx + vy + c2)
    smap = num / den
    return float(smap[radius:-radius, radius:-radius].mean())


def reference_report(reference, test) -> ReferenceReport:
    return ReferenceReport(mse(reference, test), psnr(reference, test), ssim(reference, test))


def gradient_magnitude(plane) -> np.ndarray:
    """Sobel magnitude scaled so a unit step has magnitude 1."""
    z = np.asarray(plane, dtype=np.float64)
    gx = ndimage.sobel(z, axis=1, mode="nearest") / 4.0
    gy = ndimage.sobel(z, axis=0, mode="nearest") / 4.0
    return np.hypot(gx, gy)


def _saturated(img: np.ndarray) -> np.ndarray:
    if img.ndim == 2:
        return (img <= 0.0) | (img >= 1.0)
    return np.any((img <= 0.0) | (img >= 1.0), axis=2)


def hautiere(hazy, restored, threshold: float = EDGE_THRESHOLD) -> VisibilityReport:
    """Visible-edge ratio ``e``, new-saturation fraction ``sigma`` and
    geometric-mean gradient gain ``rbar`` of ``restored`` over ``hazy``."""
    hz, rs = _pair(hazy, restored)
    g_o = gradient_magnitude(intensity(hz))
    g_r = gradient_magnitude(intensity(rs))
    vis_o = g_o > threshold
    vis_r = g_r > threshold
    n_o = int(vis_o.sum())
    n_r = int(vis_r.sum())
    if n_o > 0:
        e = (n_r - n_o) / n_o
    else:
        e = 0.0 if n_r == 0 else math.inf

    newly = _saturated(rs) & ~_saturated(hz)
    sigma = float(newly.sum()) / newly.size

    if n_r > 0:
        ratios = g_r[vis_r] / np.maximum(g_o[vis_r], 1e-6)
        rbar = float(np.exp(np.mean(np.log(ratios))))
    else:
        rbar = 1.0
    return VisibilityReport(e=float(e), sigma=sigma, rbar=rbar)


def contrast_ms(image) -> float:
    """Sum over channels of the per-channel variance."""
    img = np.asarray(image, dtype=np.float64)
    if img.ndim == 2:
        img = img[:, :, None]
    flat = img.reshape(-1, img.shape[2])
    flat = flat - flat[0]  # shift keeps constant images at exactly zero
    return float(np.sum(np.mean((flat - flat.mean(axis=0)) ** 2, axis=0)))
