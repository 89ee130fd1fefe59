"""Multilevel wavelet dehazing: solve transmission on the coarsest low band,
then walk back up the pyramid dividing detail bands by the upsampled map."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .airlight import A_MIN, estimate_airlight
from .haar import SubbandSet, dhwt_forward_multi, dhwt_inverse
from .imagecore import as_color_image, clamp_unit, crop, pad_dyadic
from .tvsolver import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITERS,
    DEFAULT_SWEEPS,
    DEFAULT_TOL,
    BoxTvProblem,
    SolverDiagnostics,
    lower_bound_plane,
    solve_swto,
)

MAX_LEVELS = 4


@dataclass(frozen=True)
class DehazeConfig:
    levels: int = 2
    lambda0: float = 0.1
    epsilon: float = DEFAULT_EPSILON
    lam: float | None = None  # overrides the lambda0 rule when set
    mu: float | None = None
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    sweeps: int = DEFAULT_SWEEPS
    a_min: float = A_MIN
    emit_transmission: bool = False

    def __post_init__(self):
        if not 0 <= self.levels <= MAX_LEVELS:
            raise ValueError(f"levels must be in [0, {MAX_LEVELS}]")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.lambda0 < 0 or (self.lam is not None and self.lam < 0):
            raise ValueError("TV weight must be non-negative")

    def tv_weight(self, scaled_airlight) -> float:
        if self.lam is not None:
            return float(self.lam)
        return self.lambda0 * float(np.mean(scaled_airlight)) / (1 << self.levels)


@dataclass
class CoarseSolution:
    """State of the reduced problem at the coarsest level."""

    hazy_low: np.ndarray  # (r, c, 3) low band of the input
    clear_low: np.ndarray  # (r, c, 3) recovered low band
    transmission: np.ndarray
    lower: np.ndarray
    airlight: np.ndarray  # level-scaled
    lam: float


@dataclass
class DehazeResult:
    image: np.ndarray
    transmission: np.ndarray
    airlight: np.ndarray
    diagnostics: SolverDiagnostics
    coarse: CoarseSolution = field(repr=False)


def upsample_transmission(t) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    return np.repeat(np.repeat(t, 2, axis=0), 2, axis=1)


def recover_detail_bands(details, t):
    t = np.asarray(t, dtype=np.float64)
    if t.min() <= 0:
        raise ValueError("transmission must be positive for detail recovery")
    out = []
    for band in details:
        band = np.asarray(band, dtype=np.float64)
        if band.shape != t.shape:
            raise ValueError("detail band and transmission shapes differ")
        out.append(band / t)
    return tuple(out)


def recover_low_band(hazy_low, t, airlight) -> np.ndarray:
    """Invert ``I = J * t + a * (1 - t)`` on the low band."""
    a = np.asarray(airlight, dtype=np.float64).reshape(1, 1, -1)
    tt = np.asarray(t)[:, :, None]
    return (hazy_low - a * (1.0 - tt)) / tt


def dehaze(image, config: DehazeConfig | None = None) -> DehazeResult:
    cfg = config or DehazeConfig()
    img = as_color_image(image)
    levels = cfg.levels

    padded, box = pad_dyadic(img, levels)
    airlight = estimate_airlight(padded, a_min=cfg.a_min)
    scaled = airlight * float(1 << levels)

    pyramids = [dhwt_forward_multi(padded[:, :, c], levels) for c in range(3)]
    hazy_low = np.stack([p.low for p in pyramids], axis=2)

    lower = lower_bound_plane([p.low for p in pyramids], scaled, cfg.epsilon)
    lam = cfg.tv_weight(scaled)
    problem = BoxTvProblem(
        lower=lower, lam=lam, mu=cfg.mu, tol=cfg.tol, max_iters=cfg.max_iters, sweeps=cfg.sweeps
    )
    t, diag = solve_swto(problem)
    t = np.maximum(t, cfg.epsilon)

    clear_low = recover_low_band(hazy_low, t, scaled)
    coarse = CoarseSolution(hazy_low, clear_low, t, lower, scaled, lam)

    lows = [clear_low[:, :, c] for c in range(3)]
    for k in range(levels, 0, -1):
        for c in range(3):
            h, v, d = recover_detail_bands(pyramids[c].details[k - 1], t)
            lows[c] = dhwt_inverse(SubbandSet(lows[c], h, v, d))
        t = upsample_transmission(t)

    restored = np.stack([clamp_unit(x) for x in lows], axis=2)
    return DehazeResult(
        image=crop(restored, box),
        transmission=crop(t, box),
        airlight=airlight,
        diagnostics=diag,
        coarse=coarse,
    )
