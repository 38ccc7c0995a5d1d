"""Zonal functions on round spheres and their large-dimension limit.

The degree-k zonal function on the n-sphere is the ultraspherical
polynomial normalized to 1 at t = 1, generated by the three-term
recurrence (k+n-1) R_{k+1} = (2k+n-1) t R_k - k R_{k-1}.  As n grows,
R_k approaches t^k; on the rotation group that limit reads
g |-> g[0,0]^k.  This module evaluates the polynomials and their ODE
residual, draws Haar rotations, and Monte-Carlo checks the averaged
product identity psi(x) psi(y) = avg_k psi(x k y) over the stabilizer
of the base point.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

_BLOCK = 4096  # fixed RNG block: sample i depends only on (seed, i), not count


def _validate_nk(n: int, k: int):
    if n < 2:
        raise ValueError(f"sphere dimension must be at least 2, got {n}")
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")


def _as_unit_interval(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.size and float(np.max(np.abs(arr))) > 1.0:
        raise ValueError("zonal functions are only defined for |t| <= 1")
    return arr


def _eval_with_derivatives(n: int, k: int, t: np.ndarray):
    """(R_k, R_k', R_k'') by running the recurrence and its derivatives."""
    p_prev, dp_prev, ddp_prev = np.ones_like(t), np.zeros_like(t), np.zeros_like(t)
    if k == 0:
        return p_prev, dp_prev, ddp_prev
    p, dp, ddp = t.copy(), np.ones_like(t), np.zeros_like(t)
    for i in range(1, k):
        denom = i + n - 1
        a = 2 * i + n - 1
        p_next = (a * t * p - i * p_prev) / denom
        dp_next = (a * (p + t * dp) - i * dp_prev) / denom
        ddp_next = (a * (2 * dp + t * ddp) - i * ddp_prev) / denom
        p_prev, dp_prev, ddp_prev = p, dp, ddp
        p, dp, ddp = p_next, dp_next, ddp_next
    return p, dp, ddp


def zonal_eval(n: int, k: int, t):
    """R_k on the n-sphere at t (scalar or array in [-1, 1])."""
    _validate_nk(n, k)
    arr = _as_unit_interval(t)
    value = _eval_with_derivatives(n, k, arr)[0]
    return float(value) if np.isscalar(t) or getattr(t, "ndim", 0) == 0 else value


def ode_residual(n: int, k: int, t):
    """(1-t^2) R'' - n t R' + k(k+n-1) R; identically zero in exact arithmetic."""
    _validate_nk(n, k)
    arr = _as_unit_interval(t)
    p, dp, ddp = _eval_with_derivatives(n, k, arr)
    res = (1.0 - arr * arr) * ddp - n * arr * dp + k * (k + n - 1) * p
    return float(res) if np.isscalar(t) or getattr(t, "ndim", 0) == 0 else res


class ZonalFunction:
    """Degree-k zonal function on the n-sphere, callable on [-1, 1]."""

    def __init__(self, n: int, k: int):
        _validate_nk(n, k)
        self.n = int(n)
        self.k = int(k)

    def __call__(self, t):
        return zonal_eval(self.n, self.k, t)

    def derivatives(self, t):
        """(value, first, second) derivative arrays at t."""
        arr = _as_unit_interval(np.asarray(t, dtype=float))
        return _eval_with_derivatives(self.n, self.k, arr)

    def ode_residual(self, t):
        return ode_residual(self.n, self.k, t)

    def __repr__(self):
        return f"ZonalFunction(n={self.n}, k={self.k})"


# --------------------------------------------------------------------------
# rotations


def _check_rotation(x: np.ndarray, dim: int, tol: float = 1e-12) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (dim, dim):
        raise ValueError(f"expected a {dim} x {dim} matrix, got shape {x.shape}")
    defect = float(np.max(np.abs(x.T @ x - np.eye(dim))))
    if defect > tol:
        raise ValueError(f"matrix is not orthogonal (defect {defect:.3e} > {tol:.0e})")
    if np.linalg.det(x) <= 0:
        raise ValueError("matrix must be a proper rotation (positive determinant)")
    return x


def limit_zonal(k: int, x) -> float:
    """Pointwise n -> infinity limit of the zonal functions at a rotation:
    the k-th power of the matrix entry fixing the base direction."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("expected a square matrix")
    x = _check_rotation(x, x.shape[0])
    return float(x[0, 0] ** k)


def _haar_block(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((count, dim, dim))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=1, axis2=2))
    d[d == 0] = 1.0
    q = q * d[:, None, :]
    flip = np.linalg.det(q) < 0
    q[flip, :, 0] *= -1.0  # move O(dim) samples onto the rotation component
    return q


def haar_rotation(dim: int, count: int, seed: int) -> np.ndarray:
    """count Haar-distributed rotations, shape (count, dim, dim).

    Reproducible: the i-th sample depends only on (seed, i), because draws
    happen in fixed blocks of 4096 with one child RNG stream per block.
    """
    if dim < 1 or count < 0:
        raise ValueError("need dim >= 1 and count >= 0")
    out = np.empty((count, dim, dim))
    done, block = 0, 0
    while done < count:
        take = min(_BLOCK, count - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
        out[done:done + take] = _haar_block(dim, take, rng)
        done += take
        block += 1
    return out


def haar_sample_stabilizer(n: int, count: int, seed: int) -> np.ndarray:
    """Haar samples from the stabilizer of the first coordinate axis inside
    the rotation group of R^(n+1): block matrices diag(1, Q), Q in SO(n).

    The embedded first row and column are exactly (1, 0, ..., 0), so
    conjugating by these samples preserves the [0, 0] entry to the bit.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    small = haar_rotation(n, count, seed)
    out = np.zeros((count, n + 1, n + 1))
    out[:, 0, 0] = 1.0
    out[:, 1:, 1:] = small
    return out


def planar_rotation(dim: int, theta: float, axes: tuple[int, int] = (0, 1)) -> np.ndarray:
    """Rotation by theta in one coordinate plane of R^dim."""
    i, j = axes
    if not (0 <= i < dim and 0 <= j < dim and i != j):
        raise ValueError(f"axes {axes} out of range for dimension {dim}")
    out = np.eye(dim)
    c, s = math.cos(theta), math.sin(theta)
    out[i, i] = c
    out[j, j] = c
    out[i, j] = -s
    out[j, i] = s
    return out


# --------------------------------------------------------------------------
# Monte Carlo functional equation


class MCResult(NamedTuple):
    estimate: float
    std_error: float
    target: float
    samples: int

    def zscore(self) -> float:
        gap = abs(self.estimate - self.target)
        if self.std_error == 0.0:
            return 0.0 if gap == 0.0 else math.inf
        return gap / self.std_error


def mc_functional_equation(n: int, k: int, x, y, samples: int, seed: int) -> MCResult:
    """Monte-Carlo check of avg over the stabilizer of psi(x h y) against
    psi(x) psi(y), where psi(g) = R_k(g[0,0]).

    Uses the same blocked RNG scheme as haar_rotation, accumulating block
    sums and combining them with exact float summation, so results are
    reproducible for a fixed (seed, samples).
    """
    _validate_nk(n, k)
    if samples < 1:
        raise ValueError("need at least one sample")
    x = _check_rotation(x, n + 1)
    y = _check_rotation(y, n + 1)
    a = x[0, :]
    b = y[:, 0]
    tx = min(1.0, max(-1.0, x[0, 0]))
    ty = min(1.0, max(-1.0, y[0, 0]))
    target = zonal_eval(n, k, tx) * zonal_eval(n, k, ty)
    sums, sqs = [], []
    done, block = 0, 0
    while done < samples:
        take = min(_BLOCK, samples - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
        q = _haar_block(n, take, rng)
        t = a[0] * b[0] + np.einsum("i,sij,j->s", a[1:], q, b[1:])
        np.clip(t, -1.0, 1.0, out=t)
        vals = _eval_with_derivatives(n, k, t)[0]
        sums.append(float(vals.sum()))
        sqs.append(float((vals * vals).sum()))
        done += take
        block += 1
    mean = math.fsum(sums) / samples
    if samples > 1:
        raw_var = math.fsum(sqs) / samples - mean * mean
        var = max(0.0, raw_var) * samples / (samples - 1)
    else:
        var = 0.0
    return MCResult(mean, math.sqrt(var / samples), float(target), samples)
