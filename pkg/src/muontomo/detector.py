"""Two-panel pixelated detector: pixel grid, trajectories, and the
direction-of-sight equivalence classes that make the full detector tractable.

All lengths in this module are centimeters, in the detector frame:
x along the horizontal pixel axis, y along the vertical pixel axis,
z along the panel separation (front panel at z = 0, back panel at z = -D).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import BoundsError, InvalidPairError, ValidationError

Panel = Literal["front", "back"]


@dataclass(frozen=True)
class DetectorConfig:
    """Geometry of the shipping-container detector.

    Defaults: 2x2 cm^2 pixels, 480 columns x 240 rows per panel, panels 2 m
    apart, housed in a 9.6 x 2.4 x 2.0 m container.
    """

    pixel_pitch: float = 2.0        # cm
    nx: int = 480                   # horizontal pixels per panel
    ny: int = 240                   # vertical pixels per panel
    panel_separation: float = 200.0  # cm, symbol D
    container_width_m: float = 9.6
    container_height_m: float = 2.4
    container_depth_m: float = 2.0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValidationError(f"grid must be at least 1x1, got {self.nx}x{self.ny}")
        if self.pixel_pitch <= 0:
            raise ValidationError(f"pixel_pitch must be positive, got {self.pixel_pitch}")
        if self.panel_separation <= 0:
            raise ValidationError(
                f"panel_separation must be positive, got {self.panel_separation}"
            )
        if self.nx * self.pixel_pitch > self.container_width_m * 100 + 1e-9:
            raise ValidationError(
                f"{self.nx} pixels of {self.pixel_pitch} cm exceed the "
                f"{self.container_width_m} m container width"
            )
        if self.panel_separation > self.container_depth_m * 100 + 1e-9:
            raise ValidationError(
                f"panel separation {self.panel_separation} cm exceeds the "
                f"{self.container_depth_m} m container depth"
            )

    @property
    def pixels_per_panel(self) -> int:
        return self.nx * self.ny


@dataclass(frozen=True)
class PixelIndex:
    """Grid address of one pixel: column i, row j, on the front or back panel."""

    i: int
    j: int
    panel: Panel = "front"


@dataclass(frozen=True)
class DirectionClass:
    """All pixel pairs sharing one (m, n) = (delta-i, delta-j) displacement.

    Every pair in the class shares the same direction of sight; `count` is the
    number of pairs realizing it.
    """

    m: int
    n: int
    count: int
    sight: tuple[float, float, float]


@dataclass(frozen=True)
class Trajectory:
    """A single muon line: front-pixel center and the back-to-front direction."""

    origin: tuple[float, float, float]     # cm, detector frame
    direction: tuple[float, float, float]  # unit vector, positive z component


def pixel_center(config: DetectorConfig, p: PixelIndex) -> np.ndarray:
    """Center of pixel (i, j) on the given panel, detector-frame cm."""
    if not (0 <= p.i < config.nx and 0 <= p.j < config.ny):
        raise BoundsError(
            f"pixel ({p.i}, {p.j}) outside {config.nx}x{config.ny} grid"
        )
    pitch = config.pixel_pitch
    z = 0.0 if p.panel == "front" else -config.panel_separation
    return np.array([pitch * p.i + pitch / 2, pitch * p.j + pitch / 2, z])


def trajectory(config: DetectorConfig, front: PixelIndex, back: PixelIndex) -> Trajectory:
    """Line through a front/back pixel pair, oriented back panel -> front panel."""
    if front.panel == back.panel:
        raise InvalidPairError("trajectory needs one pixel on each panel")
    if front.panel != "front":
        front, back = back, front
    a = pixel_center(config, front)
    b = pixel_center(config, back)
    d = a - b
    d /= np.linalg.norm(d)
    return Trajectory(origin=tuple(a), direction=tuple(d))


def total_path_count(config: DetectorConfig) -> int:
    """Number of nominal front/back pixel pairings, (nx*ny)^2."""
    return (config.nx * config.ny) ** 2


def class_arrays(config: DetectorConfig):
    """Flat arrays (m, n, count, sight[:, 3]) over all direction classes.

    Order is lexicographic in (m, n) with m in (-nx, nx), n in (-ny, ny),
    giving (2nx - 1)(2ny - 1) classes.
    """
    nx, ny = config.nx, config.ny
    pitch, sep = config.pixel_pitch, config.panel_separation
    m = np.arange(-(nx - 1), nx)
    n = np.arange(-(ny - 1), ny)
    mm, nn = np.meshgrid(m, n, indexing="ij")
    mm = mm.ravel()
    nn = nn.ravel()
    count = (nx - np.abs(mm)) * (ny - np.abs(nn))
    sight = np.column_stack([mm * pitch, nn * pitch, np.full(mm.shape, sep)])
    sight /= np.linalg.norm(sight, axis=1, keepdims=True)
    return mm, nn, count, sight


def direction_classes(config: DetectorConfig) -> list[DirectionClass]:
    """One DirectionClass per (m, n) displacement, lexicographic order."""
    mm, nn, count, sight = class_arrays(config)
    return [
        DirectionClass(int(m), int(n), int(c), (sx, sy, sz))
        for m, n, c, (sx, sy, sz) in zip(mm, nn, count, sight.tolist())
    ]
