"""Geometric simulator for one-sided muon tomography of the Great Pyramid.

Models the two-panel pixelated detector, its angular resolution and
acceptance, the sinogram coverage of multi-pose scan plans, and per-ray
path lengths through the pyramid solid.
"""
from .acceptance import (
    AcceptanceTable, acceptance_map, angular_map_axes,
    solid_angle_tilted, solid_angle_untilted,
)
from .detector import (
    DetectorConfig, DirectionClass, PixelIndex, Trajectory,
    direction_classes, pixel_center, total_path_count, trajectory,
)
from .errors import (
    BoundsError, InvalidPairError, InvalidPlanError, ValidationError,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .pose import DetectorPose, pixel_world
from .pyramid import PyramidModel, WorldRay, path_length, subtends
from .scanplan import (
    ResolutionCell, ScanPlan, linear_scan, oversampling_ratio,
    plan_coverage, resolution_grid,
)
from .sinogram import (
    CoverageGrid, CoverageGridSpec, SinogramSample, accumulate_coverage,
    row_sinogram, sinogram_point, trajectory_angle,
)

__version__ = "0.1.0"
