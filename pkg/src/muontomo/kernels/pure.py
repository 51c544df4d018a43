"""Pure numpy implementations of the hot kernels.

Fallback for the compiled extension; the two backends must agree to
floating-point roundoff (see tests/test_kernels.py and benchmarks/).
"""
from __future__ import annotations

import numpy as np

HALF_PI = np.pi / 2

BACKEND = "pure"


def normalize_line(phi, xi):
    """Fold (phi, xi) into phi in (-pi/2, pi/2] under (phi+pi, -xi) ~ (phi, xi)."""
    phi = np.asarray(phi, dtype=float)
    xi = np.asarray(xi, dtype=float)
    k = np.floor((phi + HALF_PI) / np.pi)
    phi = phi - k * np.pi
    xi = np.where(k % 2 == 0, xi, -xi)
    # lower boundary maps to the included upper one
    low = phi <= -HALF_PI
    phi = np.where(low, phi + np.pi, phi)
    xi = np.where(low, -xi, xi)
    return phi, xi


def sinogram_row(front_xy: np.ndarray, back_xy: np.ndarray):
    """Sinogram points of every front/back column pair in one detector row.

    front_xy, back_xy: (nx, 2) world xy (m) of the row's pixel centers.
    Returns (phi, xi) flat arrays of length nx*nx, front-index major.
    """
    fx = front_xy[:, 0][:, None]
    fy = front_xy[:, 1][:, None]
    dx = fx - back_xy[:, 0][None, :]
    dy = fy - back_xy[:, 1][None, :]
    phi = np.arctan2(dy, dx) - HALF_PI
    # x cos(phi) + y sin(phi) written as the cross product with the line
    # direction: identical value, no second round of trig
    xi = (fx * dy - fy * dx) / np.hypot(dx, dy)
    phi, xi = normalize_line(phi, xi)
    return phi.ravel(), xi.ravel()


def path_lengths(origins: np.ndarray, directions: np.ndarray,
                 base_side: float, height: float) -> np.ndarray:
    """Clip forward rays against the 5 pyramid half-spaces; lengths in m.

    origins (N, 3) m, directions (N, 3) unit. A miss yields exactly 0.
    """
    origins = np.asarray(origins, dtype=float)
    directions = np.asarray(directions, dtype=float)
    half = base_side / 2
    # constraints a.p <= b: floor plus four slant faces
    normals = np.array(
        [
            [0.0, 0.0, -1.0],
            [height, 0.0, half],
            [-height, 0.0, half],
            [0.0, height, half],
            [0.0, -height, half],
        ]
    )
    offsets = np.array([0.0] + [half * height] * 4)
    denom = directions @ normals.T            # (N, 5)
    num = offsets[None, :] - origins @ normals.T
    eps = 1e-300
    with np.errstate(divide="ignore", invalid="ignore"):
        t = num / denom
    t_hi = np.where(denom > eps, t, np.inf).min(axis=1)
    t_lo = np.where(denom < -eps, t, 0.0).max(axis=1)
    t_lo = np.maximum(t_lo, 0.0)
    # a parallel ray outside its half-space never enters
    blocked = ((np.abs(denom) <= eps) & (num < 0)).any(axis=1)
    lengths = np.maximum(t_hi - t_lo, 0.0)
    lengths[blocked] = 0.0
    return lengths
