"""Multi-pose scan plans, plan coverage, and forward-projected resolution."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detector import DetectorConfig
from .errors import InvalidPlanError, ValidationError
from .pose import DetectorPose, panel_corners_world
from .pyramid import PyramidModel
from .sinogram import CoverageGrid, CoverageGridSpec, row_sinogram


@dataclass(frozen=True)
class ScanPlan:
    poses: tuple[DetectorPose, ...]
    label: str = ""

    def __post_init__(self):
        if not self.poses:
            raise ValidationError("scan plan needs at least one pose")


def validate_plan(config: DetectorConfig, plan: ScanPlan, pyramid: PyramidModel) -> None:
    """Reject plans whose detector volume overlaps the pyramid footprint."""
    for k, pose in enumerate(plan.poses):
        corners = panel_corners_world(config, pose)
        if pyramid.contains_many(corners).any():
            raise InvalidPlanError(
                f"pose {k} of plan '{plan.label}' at {pose.position} "
                "overlaps the pyramid footprint"
            )


def linear_scan(
    config: DetectorConfig,
    pyramid: PyramidModel,
    axis: str,
    standoff: float,
    step: float,
    count: int,
    height: float = 0.0,
    row: int = 0,
    validate: bool = True,
) -> ScanPlan:
    """Poses marching along one base axis, facing the pyramid broadside.

    The span (count - 1) * step is centered on the travel axis; the front
    panel sits `standoff` meters outside the near base edge.
    """
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    if step < 0:
        raise ValidationError(f"step must be non-negative, got {step}")
    if standoff <= 0:
        raise ValidationError(f"standoff must be positive, got {standoff}")
    if axis not in ("x", "y"):
        raise ValidationError(f"axis must be 'x' or 'y', got {axis!r}")
    offset = pyramid.half_base + standoff
    along = (np.arange(count) - (count - 1) / 2) * step
    poses = []
    for a in along:
        if axis == "x":
            poses.append(DetectorPose((float(a), -offset, height), 0.0, row))
        else:
            poses.append(DetectorPose((-offset, float(a), height), -math.pi / 2, row))
    plan = ScanPlan(tuple(poses), label=f"{axis}-scan")
    if validate:
        validate_plan(config, plan, pyramid)
    return plan


def plan_coverage(
    config: DetectorConfig,
    plan: ScanPlan,
    pyramid: PyramidModel,
    spec: CoverageGridSpec | None = None,
) -> CoverageGrid:
    """Union of row sinograms over every pose, binned into one grid."""
    if spec is None:
        spec = CoverageGridSpec(reach_radius_m=pyramid.circumradius)
    validate_plan(config, plan, pyramid)
    grid = CoverageGrid(spec)
    for pose in plan.poses:
        phi, xi = row_sinogram(config, pose)
        grid.add(phi, xi)
    return grid


@dataclass(frozen=True)
class ResolutionCell:
    """Forward-projected footprint of one in-row direction class."""

    center: tuple[float, float, float]  # m, where the sight ray meets the target plane
    extent_x: float                     # m, transverse opening of the class solid angle
    extent_y: float
    m: int
    n: int = 0


def resolution_grid(
    config: DetectorConfig, pose: DetectorPose, target_distance: float
) -> list[ResolutionCell]:
    """Resolution cells for every (m, 0) class of the pose's row.

    target_distance is measured from the front panel along the facing
    direction; the footprint scales as pitch * R / (D/2) with R the distance
    from the pair midpoint to the target plane along the sight ray.
    """
    if target_distance < 0:
        raise ValidationError(
            f"target_distance must be non-negative, got {target_distance}"
        )
    pitch_m = config.pixel_pitch / 100
    half_sep_m = config.panel_separation / 200
    facing = pose.facing
    px, py, pz = pose.position
    # midpoint of a class's central pair: detector center, between the panels
    mid = np.array([px, py, pz]) - facing * half_sep_m
    cells = []
    for m in range(-(config.nx - 1), config.nx):
        psi = math.atan2(config.panel_separation, m * config.pixel_pitch)
        # sight direction in world xy, yaw-rotated; psi measured from the
        # detector x axis which is facing rotated by -pi/2
        ang = psi + pose.yaw
        u = np.array([math.cos(ang), math.sin(ang), 0.0])
        t = (target_distance + half_sep_m) / float(facing @ u)
        extent = pitch_m * t / half_sep_m
        center = mid + t * u
        cells.append(ResolutionCell(tuple(center), extent, extent, m))
    return cells


def oversampling_ratio(
    config: DetectorConfig, pose: DetectorPose, target_distance: float
) -> dict[int, float]:
    """Footprint extent over the xi sampling pitch (one pixel), per class."""
    pitch_m = config.pixel_pitch / 100
    return {
        c.m: c.extent_x / pitch_m
        for c in resolution_grid(config, pose, target_distance)
    }
