"""Rigid placement of the detector in pyramid world coordinates.

World frame is meters: origin at the pyramid base center, z up, base edges
along x and y. The pose reference point is the center of the front panel's
bottom pixel row; yaw 0 means the panels face +y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .detector import DetectorConfig
from .errors import BoundsError, ValidationError


def _normalize_yaw(yaw: float) -> float:
    yaw = math.remainder(yaw, 2 * math.pi)
    if yaw <= -math.pi:
        yaw += 2 * math.pi
    return yaw


@dataclass(frozen=True)
class DetectorPose:
    """Detector placement: reference position (m), yaw about z (rad), analyzed row."""

    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    yaw: float = 0.0
    row: int = 0

    def __post_init__(self):
        object.__setattr__(self, "yaw", _normalize_yaw(self.yaw))
        if self.row < 0:
            raise ValidationError(f"row must be non-negative, got {self.row}")

    def validate_row(self, config: DetectorConfig) -> None:
        if self.row >= config.ny:
            raise BoundsError(f"row {self.row} outside {config.ny}-row grid")

    @property
    def facing(self) -> np.ndarray:
        """Unit vector from back panel toward front panel, world xy plane."""
        return np.array([-math.sin(self.yaw), math.cos(self.yaw), 0.0])


def pixel_world(
    config: DetectorConfig,
    pose: DetectorPose,
    i,
    j,
    panel: str = "front",
) -> np.ndarray:
    """World coordinates (m) of pixel centers; i, j may be arrays."""
    pitch = config.pixel_pitch
    x_det = pitch * np.asarray(i) + pitch / 2          # cm along the panel
    y_det = pitch * np.asarray(j) + pitch / 2          # cm up the panel
    z_det = 0.0 if panel == "front" else -config.panel_separation
    # local offsets from the pose reference point, in meters
    lx = (x_det - config.nx * pitch / 2) / 100
    ly = z_det / 100
    lz = (y_det - pitch / 2) / 100
    c, s = math.cos(pose.yaw), math.sin(pose.yaw)
    px, py, pz = pose.position
    wx, wy, wz = np.broadcast_arrays(
        px + c * lx - s * ly, py + s * lx + c * ly, pz + lz
    )
    return np.stack([wx, wy, wz], axis=-1)


def panel_corners_world(config: DetectorConfig, pose: DetectorPose) -> np.ndarray:
    """World coordinates (m) of the 8 panel corner points."""
    pitch = config.pixel_pitch
    xs = np.array([0.0, config.nx * pitch])
    ys = np.array([0.0, config.ny * pitch])
    corners = []
    for panel, z_det in (("front", 0.0), ("back", -config.panel_separation)):
        for x_det in xs:
            for y_det in ys:
                lx = (x_det - config.nx * pitch / 2) / 100
                ly = z_det / 100
                lz = (y_det - pitch / 2) / 100
                c, s = math.cos(pose.yaw), math.sin(pose.yaw)
                px, py, pz = pose.position
                corners.append(
                    [px + c * lx - s * ly, py + s * lx + c * ly, pz + lz]
                )
    return np.array(corners)


def to_local(pose: DetectorPose, point) -> np.ndarray:
    """Express a world point in the pose frame (x across, y forward, z up), m."""
    d = np.asarray(point, dtype=float) - np.asarray(pose.position)
    c, s = math.cos(-pose.yaw), math.sin(-pose.yaw)
    return np.array([c * d[0] - s * d[1], s * d[0] + c * d[1], d[2]])
