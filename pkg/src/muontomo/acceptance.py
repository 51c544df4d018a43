"""Angular resolution (solid angle per direction of sight) and acceptance.

The solid angle of a pixel pair is evaluated from the midpoint between the
two pixels: r is half the center-to-center distance, so the straight-ahead
class of the default detector gives 4 cm^2 / (100 cm)^2 = 4e-4 sr.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detector import DetectorConfig, class_arrays


@dataclass(frozen=True)
class AcceptanceTable:
    """Per-class angular and acceptance quantities, parallel flat arrays.

    Order matches detector.class_arrays: lexicographic in (m, n).
    Areas in cm^2, solid angles in sr, acceptance in cm^2 sr, angles in rad.
    """

    m: np.ndarray
    n: np.ndarray
    count: np.ndarray
    theta: np.ndarray
    psi: np.ndarray
    solid_angle_untilted: np.ndarray
    solid_angle_tilted: np.ndarray
    detection_area: np.ndarray
    acceptance: np.ndarray

    def __len__(self) -> int:
        return len(self.m)


def solid_angle_untilted(config: DetectorConfig, m: int, n: int) -> float:
    """Solid angle A / r^2 of class (m, n), r the half pair distance, sr."""
    pitch, sep = config.pixel_pitch, config.panel_separation
    r_half = 0.5 * np.sqrt((m * pitch) ** 2 + (n * pitch) ** 2 + sep**2)
    return pitch**2 / r_half**2


def _tilt_factor(config: DetectorConfig, m, n):
    pitch, sep = config.pixel_pitch, config.panel_separation
    cos_theta = sep / np.sqrt(sep**2 + (np.asarray(m) * pitch) ** 2)
    cos_psi = sep / np.sqrt(sep**2 + (np.asarray(n) * pitch) ** 2)
    return cos_theta * cos_psi


def solid_angle_tilted(config: DetectorConfig, m: int, n: int) -> float:
    """Tilt-corrected solid angle: per-axis cosine reduction of the pixel area."""
    return solid_angle_untilted(config, m, n) * float(_tilt_factor(config, m, n))


def angular_map_axes(config: DetectorConfig, m: int, n: int) -> tuple[float, float]:
    """(theta, psi) plot angles of class (m, n): arctan of each tilt, rad."""
    pitch, sep = config.pixel_pitch, config.panel_separation
    return float(np.arctan2(m * pitch, sep)), float(np.arctan2(n * pitch, sep))


def acceptance_map(config: DetectorConfig, tilt: bool = True) -> AcceptanceTable:
    """Acceptance = detection area x angular resolution, for every class.

    With tilt=False the acceptance column uses the untilted solid angle
    (both solid-angle columns are always filled).
    """
    mm, nn, count, _ = class_arrays(config)
    pitch, sep = config.pixel_pitch, config.panel_separation
    r_half_sq = 0.25 * ((mm * pitch) ** 2 + (nn * pitch) ** 2 + sep**2)
    omega0 = pitch**2 / r_half_sq
    omega_t = omega0 * _tilt_factor(config, mm, nn)
    area = count * pitch**2
    acc = area * (omega_t if tilt else omega0)
    return AcceptanceTable(
        m=mm,
        n=nn,
        count=count,
        theta=np.arctan2(mm * pitch, sep),
        psi=np.arctan2(nn * pitch, sep),
        solid_angle_untilted=omega0,
        solid_angle_tilted=omega_t,
        detection_area=area.astype(float),
        acceptance=acc,
    )
