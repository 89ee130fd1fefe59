"""Orthonormal 2-D Haar transform, single level and multilevel.

Each 2x2 block ``[[p00, p01], [p10, p11]]`` maps to

    a = (p00 + p01 + p10 + p11) / 2
    h = (p00 - p01 + p10 - p11) / 2
    v = (p00 + p01 - p10 - p11) / 2
    d = (p00 - p01 - p10 + p11) / 2

which is ``W X W^T`` for the orthonormal Haar matrix ``W``; ``a`` sits in the
top-left quadrant, ``h`` top-right, ``v`` bottom-left, ``d`` bottom-right.
With this scaling a constant ``c`` becomes ``2 c`` in the low band at every
level, so an ``l``-level low band carries airlight ``2**l * a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SubbandSet:
    a: np.ndarray
    h: np.ndarray
    v: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        shape = np.shape(self.a)
        for name in "hvd":
            if np.shape(getattr(self, name)) != shape:
                raise ValueError("sub-band blocks must share dimensions")

    def details(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.h, self.v, self.d

    def as_matrix(self) -> np.ndarray:
        """Quadrant layout ``[[a, h], [v, d]]``."""
        return np.block([[self.a, self.h], [self.v, self.d]])


@dataclass
class WaveletPyramid:
    """``details[k]`` holds the (h, v, d) triple of level ``k + 1`` (finest first)."""

    low: np.ndarray
    details: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = field(default_factory=list)

    @property
    def levels(self) -> int:
        return len(self.details)

    def coefficients(self) -> list[np.ndarray]:
        out = [self.low]
        for triple in self.details:
            out.extend(triple)
        return out


def dhwt_forward(plane) -> SubbandSet:
    x = np.asarray(plane, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("expected a 2-D plane")
    rows, cols = x.shape
    if rows % 2 or cols % 2:
        raise ValueError(f"plane dimensions must be even, got {rows}x{cols}")
    p00 = x[0::2, 0::2]
    p01 = x[0::2, 1::2]
    p10 = x[1::2, 0::2]
    p11 = x[1::2, 1::2]
    s0 = p00 + p01
    s1 = p10 + p11
    d0 = p00 - p01
    d1 = p10 - p11
    return SubbandSet(
        a=0.5 * (s0 + s1),
        h=0.5 * (d0 + d1),
        v=0.5 * (s0 - s1),
        d=0.5 * (d0 - d1),
    )


def dhwt_inverse(sub: SubbandSet) -> np.ndarray:
    a, h, v, d = (np.asarray(b, dtype=np.float64) for b in (sub.a, sub.h, sub.v, sub.d))
    rows, cols = a.shape
    out = np.empty((2 * rows, 2 * cols))
    ah = a + h
    a_h = a - h
    vd = v + d
    v_d = v - d
    out[0::2, 0::2] = 0.5 * (ah + vd)
    out[0::2, 1::2] = 0.5 * (a_h + v_d)
    out[1::2, 0::2] = 0.5 * (ah - vd)
    out[1::2, 1::2] = 0.5 * (a_h - v_d)
    return out


def dhwt_forward_multi(plane, levels: int) -> WaveletPyramid:
    x = np.asarray(plane, dtype=np.float64)
    if levels < 0:
        raise ValueError("levels must be non-negative")
    block = 1 << levels
    if x.ndim != 2 or x.shape[0] % block or x.shape[1] % block:
        raise ValueError(f"plane shape {x.shape} is not divisible by 2**{levels}")
    details = []
    low = x
    for _ in range(levels):
        sub = dhwt_forward(low)
        details.append(sub.details())
        low = sub.a
    return WaveletPyramid(low=low.copy() if levels == 0 else low, details=details)


def dhwt_inverse_multi(pyramid: WaveletPyramid) -> np.ndarray:
    low = np.asarray(pyramid.low, dtype=np.float64)
    for h, v, d in reversed(pyramid.details):
        low = dhwt_inverse(SubbandSet(low, h, v, d))
    return low
