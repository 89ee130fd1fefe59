"""Box-constrained TV-regularized transmission solver (Split Bregman).

Solves, on one low-frequency sub-band,

    min_t  ||t||_F^2 + lam * TV(t)   subject to   lower <= t <= 1

where TV is the anisotropic total variation (l1 norm of forward differences,
Neumann boundary).  The constraint ``Q = Y + a * t >= 0`` on the auxiliary
radiance variable reduces to the per-pixel lower bound built by
:func:`lower_bound_plane`, so only ``t`` is optimized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

DEFAULT_EPSILON = 0.05
DEFAULT_TOL = 1e-4
DEFAULT_MAX_ITERS = 100
DEFAULT_SWEEPS = 2


def default_mu(lam: float) -> float:
    return 2.0 * lam + 0.1


@dataclass(frozen=True)
class BoxTvProblem:
    lower: np.ndarray
    lam: float
    mu: float | None = None
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    sweeps: int = DEFAULT_SWEEPS

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=np.float64)
        if lower.ndim != 2 or lower.size == 0:
            raise ValueError("lower bound must be a non-empty 2-D array")
        if not np.all(np.isfinite(lower)) or lower.min() <= 0.0 or lower.max() > 1.0:
            raise ValueError("lower bound values must lie in (0, 1]")
        if self.lam < 0:
            raise ValueError("lam must be non-negative")
        if self.mu is not None and self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.tol <= 0 or self.max_iters < 1 or self.sweeps < 1:
            raise ValueError("tol, max_iters and sweeps must be positive")
        object.__setattr__(self, "lower", lower)

    @property
    def penalty(self) -> float:
        return default_mu(self.lam) if self.mu is None else float(self.mu)


@dataclass(frozen=True)
class SolverDiagnostics:
    iterations: int
    final_objective: float
    final_rel_change: float
    converged: bool


def lower_bound_plane(low_bands, airlight, epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Smallest transmission keeping the recovered radiance non-negative.

    ``low_bands`` holds one low-frequency plane per channel and ``airlight``
    the matching (level-scaled) airlight values.  Each channel demands
    ``t >= 1 - I_c / a_c``; the tightest demand wins, floored at ``epsilon``.
    """
    airlight = np.asarray(airlight, dtype=np.float64)
    if np.any(airlight <= 0):
        raise ValueError("airlight must be strictly positive")
    bands = [np.asarray(b, dtype=np.float64) for b in low_bands]
    if len(bands) != len(airlight):
        raise ValueError("need one airlight value per band")
    shape = bands[0].shape
    if any(b.shape != shape for b in bands):
        raise ValueError("sub-band planes must share dimensions")
    bound = np.max([1.0 - b / a for b, a in zip(bands, airlight)], axis=0)
    return np.clip(bound, epsilon, 1.0)


def grad(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward differences along columns (x) and rows (y); zero on the far edge."""
    gx = np.zeros_like(t)
    gy = np.zeros_like(t)
    gx[:, :-1] = t[:, 1:] - t[:, :-1]
    gy[:-1, :] = t[1:, :] - t[:-1, :]
    return gx, gy


def grad_adjoint(px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Adjoint of :func:`grad` (a negative divergence)."""
    out = np.zeros_like(px)
    out[:, :-1] -= px[:, :-1]
    out[:, 1:] += px[:, :-1]
    out[:-1, :] -= py[:-1, :]
    out[1:, :] += py[:-1, :]
    return out


def tv_anisotropic(plane) -> float:
    plane = np.asarray(plane, dtype=np.float64)
    gx, gy = grad(plane)
    return float(np.abs(gx).sum() + np.abs(gy).sum())


def objective(t, lam: float) -> float:
    t = np.asarray(t, dtype=np.float64)
    return float(np.sum(t * t) + lam * tv_anisotropic(t))


@numba.njit(cache=True)
def _gauss_seidel(t, rhs, mu, sweeps):
    # (2 + mu) t + mu * D^T D t = rhs, raster order
    rows, cols = t.shape
    for _ in range(sweeps):
        for i in range(rows):
            for j in range(cols):
                acc = rhs[i, j]
                n = 0
                if i > 0:
                    acc += mu * t[i - 1, j]
                    n += 1
                if i < rows - 1:
                    acc += mu * t[i + 1, j]
                    n += 1
                if j > 0:
                    acc += mu * t[i, j - 1]
                    n += 1
                if j < cols - 1:
                    acc += mu * t[i, j + 1]
                    n += 1
                t[i, j] = acc / (2.0 + mu + mu * n)


@numba.njit(cache=True)
def _split_bregman(lower, lam, mu, tol, max_iters, sweeps, t):
    rows, cols = lower.shape
    dx = np.zeros((rows, cols))
    dy = np.zeros((rows, cols))
    bx = np.zeros((rows, cols))
    by = np.zeros((rows, cols))
    w = t.copy()
    bw = np.zeros((rows, cols))
    rhs = np.empty((rows, cols))
    prev = np.empty((rows, cols))
    thresh = lam / mu
    rel = np.inf
    it = 0
    while it < max_iters:
        it += 1
        prev[:, :] = t
        # rhs = mu * D^T (d - b) + mu * (w - b_w)
        for i in range(rows):
            for j in range(cols):
                acc = w[i, j] - bw[i, j]
                if j < cols - 1:
                    acc -= dx[i, j] - bx[i, j]
                if j > 0:
                    acc += dx[i, j - 1] - bx[i, j - 1]
                if i < rows - 1:
                    acc -= dy[i, j] - by[i, j]
                if i > 0:
                    acc += dy[i - 1, j] - by[i - 1, j]
                rhs[i, j] = mu * acc
        _gauss_seidel(t, rhs, mu, sweeps)
        num = 0.0
        den = 0.0
        res = 0.0
        for i in range(rows):
            for j in range(cols):
                if j < cols - 1:
                    g = t[i, j + 1] - t[i, j]
                    s = g + bx[i, j]
                    if s > thresh:
                        dx[i, j] = s - thresh
                    elif s < -thresh:
                        dx[i, j] = s + thresh
                    else:
                        dx[i, j] = 0.0
                    bx[i, j] = s - dx[i, j]
                    res += (g - dx[i, j]) ** 2
                if i < rows - 1:
                    g = t[i + 1, j] - t[i, j]
                    s = g + by[i, j]
                    if s > thresh:
                        dy[i, j] = s - thresh
                    elif s < -thresh:
                        dy[i, j] = s + thresh
                    else:
                        dy[i, j] = 0.0
                    by[i, j] = s - dy[i, j]
                    res += (g - dy[i, j]) ** 2
                s = t[i, j] + bw[i, j]
                if s < lower[i, j]:
                    w[i, j] = lower[i, j]
                elif s > 1.0:
                    w[i, j] = 1.0
                else:
                    w[i, j] = s
                bw[i, j] = s - w[i, j]
                res += (t[i, j] - w[i, j]) ** 2
                diff = t[i, j] - prev[i, j]
                num += diff * diff
                den += prev[i, j] * prev[i, j]
        scale = max(np.sqrt(den), 1e-12)
        rel = np.sqrt(num) / scale
        # a stalled t with large splitting residual is not convergence
        resid = np.sqrt(res) / scale
        if rel < tol and resid < tol:
            break
    return it, rel, resid


def solve_swto(problem: BoxTvProblem) -> tuple[np.ndarray, SolverDiagnostics]:
    """Split Bregman solve of the box-constrained TV problem.

    The returned map is always projected onto ``[lower, 1]``; running out of
    iterations is reported through ``diagnostics.converged`` only.  If the
    flat plane at ``max(lower)`` scores better than the iterate it is
    returned instead (this happens for large ``lam``, where the iterate
    creeps toward that plane slowly).
    """
    lower = np.ascontiguousarray(problem.lower)
    t = lower.copy()
    iters, rel, resid = _split_bregman(
        lower,
        float(problem.lam),
        problem.penalty,
        float(problem.tol),
        int(problem.max_iters),
        int(problem.sweeps),
        t,
    )
    t = np.clip(t, lower, 1.0)
    value = objective(t, problem.lam)
    # the flat plane at max(lower) is the best constant; never return worse
    flat = np.full_like(lower, lower.max())
    flat_value = objective(flat, problem.lam)
    if flat_value <= value:
        t, value = flat, flat_value
    diag = SolverDiagnostics(
        iterations=int(iters),
        final_objective=value,
        final_rel_change=float(rel),
        converged=bool(rel < problem.tol and resid < problem.tol),
    )
    return t, diag
