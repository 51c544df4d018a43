"""Run configuration: TOML parsing, validation, and canonical serialization.

The config is plain TOML with nested sections. Unknown keys are rejected so
typos fail loudly. Serialization is canonical (all fields, resolved values),
so parse -> serialize is idempotent after one round trip.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .detector import DetectorConfig
from .errors import ValidationError
from .pose import DetectorPose
from .pyramid import PyramidModel
from .sinogram import CoverageGridSpec

_ALLOWED = {
    "detector": {"pixel_pitch_cm", "nx", "ny", "panel_separation_cm"},
    "pyramid": {"base_side_m", "height_m"},
    "pose": {"x_m", "y_m", "z_m", "yaw_deg", "row", "standoff_m", "placement"},
    "plan": {"axis", "standoff_m", "step_m", "count", "height_m", "row"},
    "binning": {"phi_deg", "xi_m", "xi_max_m"},
    "resolution": {"target_distance_m"},
    "output": {"dir"},
}


@dataclass(frozen=True)
class PlanSpec:
    axis: str
    standoff_m: float = 25.0
    step_m: float = 20.0
    count: int = 11
    height_m: float = 0.0
    row: int = 0


def _reference_pose() -> DetectorPose:
    """Centered pose, front panel 25 m outside the near base edge."""
    pyramid = PyramidModel()
    return DetectorPose(_default_pose_position(pyramid, 25.0, "edge"))


@dataclass(frozen=True)
class RunConfig:
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    pyramid: PyramidModel = field(default_factory=PyramidModel)
    pose: DetectorPose = field(default_factory=_reference_pose)
    plans: tuple[PlanSpec, ...] = ()
    binning: CoverageGridSpec = field(default_factory=CoverageGridSpec)
    target_distance_m: float | None = None
    out_dir: str | None = None

    def resolved_target_distance(self) -> float:
        """Distance from the front panel to the pyramid center plane, m."""
        if self.target_distance_m is not None:
            return self.target_distance_m
        px, py, _ = self.pose.position
        f = self.pose.facing
        return float(-(px * f[0] + py * f[1]))


def _check_keys(section: str, table: dict) -> None:
    unknown = set(table) - _ALLOWED[section]
    if unknown:
        raise ValidationError(
            f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}"
        )


def _default_pose_position(pyramid: PyramidModel, standoff: float, placement: str):
    if placement == "inset":
        # standoff measured inward from the near base edge (inside the footprint)
        return (0.0, -pyramid.half_base + standoff, 0.0)
    return (0.0, -(pyramid.half_base + standoff), 0.0)


def parse_config(text: str) -> RunConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"config is not valid TOML: {exc}") from exc
    unknown_sections = set(raw) - set(_ALLOWED)
    if unknown_sections:
        raise ValidationError(
            f"unknown section(s): {', '.join(sorted(unknown_sections))}"
        )

    det_raw = raw.get("detector", {})
    _check_keys("detector", det_raw)
    detector = DetectorConfig(
        pixel_pitch=float(det_raw.get("pixel_pitch_cm", 2.0)),
        nx=int(det_raw.get("nx", 480)),
        ny=int(det_raw.get("ny", 240)),
        panel_separation=float(det_raw.get("panel_separation_cm", 200.0)),
    )

    pyr_raw = raw.get("pyramid", {})
    _check_keys("pyramid", pyr_raw)
    pyramid = PyramidModel(
        base_side=float(pyr_raw.get("base_side_m", 230.33)),
        height=float(pyr_raw.get("height_m", 138.7)),
    )

    pose_raw = raw.get("pose", {})
    _check_keys("pose", pose_raw)
    placement = pose_raw.get("placement", "edge")
    if placement not in ("edge", "inset"):
        raise ValidationError(
            f"pose.placement must be 'edge' or 'inset', got {placement!r}"
        )
    if "standoff_m" in pose_raw and ("x_m" in pose_raw or "y_m" in pose_raw):
        raise ValidationError("pose: give either standoff_m or explicit x_m/y_m")
    if "x_m" in pose_raw or "y_m" in pose_raw:
        position = (
            float(pose_raw.get("x_m", 0.0)),
            float(pose_raw.get("y_m", 0.0)),
            float(pose_raw.get("z_m", 0.0)),
        )
    else:
        standoff = float(pose_raw.get("standoff_m", 25.0))
        x, y, _ = _default_pose_position(pyramid, standoff, placement)
        position = (x, y, float(pose_raw.get("z_m", 0.0)))
    pose = DetectorPose(
        position=position,
        yaw=math.radians(float(pose_raw.get("yaw_deg", 0.0))),
        row=int(pose_raw.get("row", 0)),
    )
    pose.validate_row(detector)

    plans = []
    for k, plan_raw in enumerate(raw.get("plan", [])):
        _check_keys("plan", plan_raw)
        if "axis" not in plan_raw:
            raise ValidationError(f"plan #{k}: axis is required")
        plans.append(
            PlanSpec(
                axis=str(plan_raw["axis"]),
                standoff_m=float(plan_raw.get("standoff_m", 25.0)),
                step_m=float(plan_raw.get("step_m", 20.0)),
                count=int(plan_raw.get("count", 11)),
                height_m=float(plan_raw.get("height_m", 0.0)),
                row=int(plan_raw.get("row", 0)),
            )
        )

    bin_raw = raw.get("binning", {})
    _check_keys("binning", bin_raw)
    binning = CoverageGridSpec(
        phi_bin_deg=float(bin_raw.get("phi_deg", 1.0)),
        xi_bin_m=float(bin_raw.get("xi_m", 1.0)),
        xi_max_m=float(bin_raw.get("xi_max_m", 200.0)),
        reach_radius_m=pyramid.circumradius,
    )

    res_raw = raw.get("resolution", {})
    _check_keys("resolution", res_raw)
    target = res_raw.get("target_distance_m")

    out_raw = raw.get("output", {})
    _check_keys("output", out_raw)

    return RunConfig(
        detector=detector,
        pyramid=pyramid,
        pose=pose,
        plans=tuple(plans),
        binning=binning,
        target_distance_m=None if target is None else float(target),
        out_dir=out_raw.get("dir"),
    )


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    return '"' + str(v).replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_config(rc: RunConfig) -> str:
    """Canonical TOML form of a RunConfig; stable field order, resolved values."""
    lines = []

    def section(name, items):
        lines.append(f"[{name}]")
        for k, v in items:
            if v is not None:
                lines.append(f"{k} = {_toml_value(v)}")
        lines.append("")

    d, p = rc.detector, rc.pyramid
    section("detector", [
        ("pixel_pitch_cm", d.pixel_pitch), ("nx", d.nx), ("ny", d.ny),
        ("panel_separation_cm", d.panel_separation),
    ])
    section("pyramid", [("base_side_m", p.base_side), ("height_m", p.height)])
    section("pose", [
        ("x_m", rc.pose.position[0]), ("y_m", rc.pose.position[1]),
        ("z_m", rc.pose.position[2]),
        ("yaw_deg", math.degrees(rc.pose.yaw)), ("row", rc.pose.row),
    ])
    for plan in rc.plans:
        lines.append("[[plan]]")
        for k, v in (
            ("axis", plan.axis), ("standoff_m", plan.standoff_m),
            ("step_m", plan.step_m), ("count", plan.count),
            ("height_m", plan.height_m), ("row", plan.row),
        ):
            lines.append(f"{k} = {_toml_value(v)}")
        lines.append("")
    b = rc.binning
    section("binning", [
        ("phi_deg", b.phi_bin_deg), ("xi_m", b.xi_bin_m), ("xi_max_m", b.xi_max_m),
    ])
    section("resolution", [("target_distance_m", rc.target_distance_m)])
    section("output", [("dir", rc.out_dir)])
    return "\n".join(lines)
