"""Mapping posed detector-row trajectories into Radon sinogram space.

A projection line is stored in normal form x cos(phi) + y sin(phi) = xi with
phi folded into (-pi/2, pi/2] under the identification (phi + pi, -xi) ~
(phi, xi). phi is the line's normal angle; xi its signed offset from the
world origin in meters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .detector import DetectorConfig
from .errors import BoundsError, ValidationError
from .pose import DetectorPose, pixel_world


@dataclass(frozen=True)
class SinogramSample:
    phi: float  # rad, in (-pi/2, pi/2]
    xi: float   # m


def trajectory_angle(config: DetectorConfig, m: int) -> float:
    """In-plane direction angle psi of an m-class trajectory, from the x axis.

    psi = atan2(D, m * pitch): pi/2 for straight ahead, mirrored for -m.
    """
    if not (-config.nx < m < config.nx):
        raise BoundsError(f"m={m} not realizable on an nx={config.nx} grid")
    return math.atan2(config.panel_separation, m * config.pixel_pitch)


def sinogram_point(
    config: DetectorConfig, pose: DetectorPose, front_i: int, back_i: int
) -> SinogramSample:
    """Sinogram coordinates of the line through one posed pixel pair."""
    pose.validate_row(config)
    for name, idx in (("front_i", front_i), ("back_i", back_i)):
        if not (0 <= idx < config.nx):
            raise BoundsError(f"{name}={idx} outside {config.nx}-column grid")
    f = pixel_world(config, pose, front_i, pose.row, "front")
    b = pixel_world(config, pose, back_i, pose.row, "back")
    psi = math.atan2(f[1] - b[1], f[0] - b[0])
    phi = psi - math.pi / 2
    xi = f[0] * math.cos(phi) + f[1] * math.sin(phi)
    phi, xi = kernels.normalize_line(phi, xi)
    return SinogramSample(float(np.asarray(phi).ravel()[0]), float(np.asarray(xi).ravel()[0]))


def row_sinogram(config: DetectorConfig, pose: DetectorPose):
    """(phi, xi) arrays for all nx^2 column pairs of the pose's row.

    Order is front-index major, back-index minor.
    """
    pose.validate_row(config)
    cols = np.arange(config.nx)
    front = pixel_world(config, pose, cols, pose.row, "front")[:, :2]
    back = pixel_world(config, pose, cols, pose.row, "back")[:, :2]
    return kernels.sinogram_row(
        np.ascontiguousarray(front), np.ascontiguousarray(back)
    )


@dataclass(frozen=True)
class CoverageGridSpec:
    """Binning of sinogram space for coverage accounting.

    phi bins tile (-pi/2, pi/2]; xi bins tile [-xi_max, xi_max] m. Bins whose
    center lies within reach_radius of xi = 0 count as geometrically
    reachable for the covered fraction.
    """

    phi_bin_deg: float = 1.0
    xi_bin_m: float = 1.0
    xi_max_m: float = 200.0
    reach_radius_m: float = 230.33 * math.sqrt(2) / 2

    def __post_init__(self):
        if self.phi_bin_deg <= 0 or self.xi_bin_m <= 0:
            raise ValidationError("bin widths must be positive")
        if self.xi_max_m <= 0 or self.reach_radius_m <= 0:
            raise ValidationError("xi ranges must be positive")

    @property
    def n_phi(self) -> int:
        return max(1, round(180.0 / self.phi_bin_deg))

    @property
    def n_xi(self) -> int:
        return max(1, round(2 * self.xi_max_m / self.xi_bin_m))

    @property
    def phi_edges(self) -> np.ndarray:
        return np.linspace(-math.pi / 2, math.pi / 2, self.n_phi + 1)

    @property
    def xi_edges(self) -> np.ndarray:
        return np.linspace(-self.xi_max_m, self.xi_max_m, self.n_xi + 1)


class CoverageGrid:
    """Binned occupancy of sinogram space accumulated over scan-plan samples."""

    def __init__(self, spec: CoverageGridSpec):
        self.spec = spec
        self.occupancy = np.zeros((spec.n_phi, spec.n_xi), dtype=np.int64)
        self.total_hits = 0
        self.dropped = 0  # samples outside the xi binning range

    def add(self, phi, xi) -> None:
        phi = np.asarray(phi, dtype=float).ravel()
        xi = np.asarray(xi, dtype=float).ravel()
        spec = self.spec
        pi_idx = np.floor(
            (phi + math.pi / 2) / math.pi * spec.n_phi
        ).astype(np.int64)
        # phi = pi/2 belongs to the last (right-inclusive) bin
        pi_idx = np.clip(pi_idx, 0, spec.n_phi - 1)
        xi_idx = np.floor(
            (xi + spec.xi_max_m) / (2 * spec.xi_max_m) * spec.n_xi
        ).astype(np.int64)
        on_edge = xi == spec.xi_max_m
        xi_idx[on_edge] = spec.n_xi - 1
        inside = (xi_idx >= 0) & (xi_idx < spec.n_xi)
        np.add.at(self.occupancy, (pi_idx[inside], xi_idx[inside]), 1)
        self.total_hits += int(inside.sum())
        self.dropped += int((~inside).sum())

    def merge(self, other: "CoverageGrid") -> "CoverageGrid":
        if other.spec != self.spec:
            raise ValidationError("cannot merge coverage grids with different specs")
        self.occupancy += other.occupancy
        self.total_hits += other.total_hits
        self.dropped += other.dropped
        return self

    @property
    def reachable_mask(self) -> np.ndarray:
        centers = 0.5 * (self.spec.xi_edges[:-1] + self.spec.xi_edges[1:])
        return np.abs(centers) <= self.spec.reach_radius_m

    @property
    def covered_fraction(self) -> float:
        mask = self.reachable_mask
        reachable = self.spec.n_phi * int(mask.sum())
        if reachable == 0:
            return 0.0
        nonempty = int((self.occupancy[:, mask] > 0).sum())
        return nonempty / reachable


def accumulate_coverage(phi, xi, spec: CoverageGridSpec) -> CoverageGrid:
    """Bin one batch of sinogram samples into a fresh grid."""
    grid = CoverageGrid(spec)
    grid.add(phi, xi)
    return grid
