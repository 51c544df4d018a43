"""The pyramid as a convex solid: containment, ray path lengths, subtension.

World frame in meters, origin at the base center, z up. The solid is the
intersection of five half-spaces: the floor z >= 0 and four slant faces
meeting at the apex (0, 0, height). Boundary points count as inside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .detector import DetectorConfig
from .errors import ValidationError
from .pose import DetectorPose, to_local

_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class PyramidModel:
    base_side: float = 230.33  # m
    height: float = 138.7      # m

    def __post_init__(self):
        if self.base_side <= 0 or self.height <= 0:
            raise ValidationError("pyramid dimensions must be positive")

    @property
    def half_base(self) -> float:
        return self.base_side / 2

    @property
    def circumradius(self) -> float:
        """Radius of the circle circumscribing the base square."""
        return self.half_base * math.sqrt(2)

    def halfspaces(self) -> tuple[np.ndarray, np.ndarray]:
        """(normals, offsets) with the solid = {p : normals @ p <= offsets}."""
        h, half = self.height, self.half_base
        normals = np.array(
            [
                [0.0, 0.0, -1.0],
                [h, 0.0, half],
                [-h, 0.0, half],
                [0.0, h, half],
                [0.0, -h, half],
            ]
        )
        offsets = np.array([0.0] + [half * h] * 4)
        return normals, offsets

    def contains(self, point) -> bool:
        """True iff the point is inside or on the boundary."""
        normals, offsets = self.halfspaces()
        p = np.asarray(point, dtype=float)
        return bool(np.all(normals @ p <= offsets + _EDGE_TOL))

    def contains_many(self, points) -> np.ndarray:
        normals, offsets = self.halfspaces()
        p = np.asarray(points, dtype=float)
        return np.all(p @ normals.T <= offsets + _EDGE_TOL, axis=-1)

    def silhouette_vertices(self) -> dict[str, np.ndarray]:
        """The five vertices that bound the silhouette from any side view."""
        half, h = self.half_base, self.height
        return {
            "base_-x-y": np.array([-half, -half, 0.0]),
            "base_+x-y": np.array([half, -half, 0.0]),
            "base_+x+y": np.array([half, half, 0.0]),
            "base_-x+y": np.array([-half, half, 0.0]),
            "apex": np.array([0.0, 0.0, h]),
        }


@dataclass(frozen=True)
class WorldRay:
    """A ray in world meters with a unit direction."""

    point: tuple[float, float, float]
    direction: tuple[float, float, float]

    def __post_init__(self):
        norm = math.sqrt(sum(c * c for c in self.direction))
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"ray direction norm {norm} is not 1")


def path_length(pyramid: PyramidModel, ray: WorldRay) -> float:
    """Length of the forward ray's intersection with the solid; 0 on a miss."""
    lengths = kernels.path_lengths(
        np.asarray([ray.point], dtype=float),
        np.asarray([ray.direction], dtype=float),
        pyramid.base_side,
        pyramid.height,
    )
    return float(lengths[0])


def path_lengths(pyramid: PyramidModel, origins, directions) -> np.ndarray:
    """Vectorized path_length over (N, 3) origins and unit directions."""
    return kernels.path_lengths(
        np.ascontiguousarray(origins, dtype=float),
        np.ascontiguousarray(directions, dtype=float),
        pyramid.base_side,
        pyramid.height,
    )


@dataclass(frozen=True)
class VertexMargin:
    label: str
    margin: float  # rad; smallest slack between vertex angle and fan limit
    subtended: bool


@dataclass(frozen=True)
class SubtensionReport:
    subtended: bool
    vertices: tuple[VertexMargin, ...]


def subtends(
    config: DetectorConfig, pose: DetectorPose, pyramid: PyramidModel
) -> SubtensionReport:
    """Whether the posed detector's extreme trajectories enclose the pyramid.

    Each silhouette vertex is checked against the horizontal fan half-angle
    atan((nx-1) pitch / D) and, for the apex, the vertical half-angle too.
    Margins are the angular slack; all non-negative means subtended.
    """
    pitch, sep = config.pixel_pitch, config.panel_separation
    h_max = math.atan2((config.nx - 1) * pitch, sep)
    v_max = math.atan2((config.ny - 1) * pitch, sep)
    out = []
    for label, vertex in pyramid.silhouette_vertices().items():
        local = to_local(pose, vertex)
        forward = local[1]
        if forward <= 0:
            out.append(VertexMargin(label, -math.pi, False))
            continue
        ang_h = abs(math.atan2(local[0], forward))
        margin = h_max - ang_h
        if label == "apex":
            ang_v = abs(math.atan2(local[2], math.hypot(local[0], forward)))
            margin = min(margin, v_max - ang_v)
        out.append(VertexMargin(label, margin, margin >= 0))
    return SubtensionReport(all(v.subtended for v in out), tuple(out))
