"""Command-line surface producing the CSV data products.

Subcommands: acceptance | sinogram | pathlength | range | resolution.
Exit codes: 0 success, 1 validation failure (or a non-subtended pose for
`range`), 2 I/O failure.
"""
from __future__ import annotations

import math
import os
import sys

import click
import numpy as np

from . import kernels
from .acceptance import acceptance_map
from .csvio import (
    CLASSES_HEADER, COVERAGE_HEADER, PATHLENGTH_HEADER, RANGE_HEADER,
    RESOLUTION_HEADER, SINOGRAM_HEADER, write_csv,
)
from .detector import DetectorConfig
from .errors import ValidationError
from .pose import DetectorPose, pixel_world
from .pyramid import path_lengths, subtends
from .runconfig import RunConfig, load_config
from .scanplan import linear_scan, resolution_grid
from .sinogram import CoverageGrid, row_sinogram


def _load(config_path: str | None) -> RunConfig:
    if config_path is None:
        return RunConfig()
    return load_config(config_path)


def _with_row(pose: DetectorPose, row: int | None) -> DetectorPose:
    if row is None:
        return pose
    return DetectorPose(pose.position, pose.yaw, row)


def _out_dir(rc: RunConfig, out: str | None) -> str:
    target = out or rc.out_dir or "."
    os.makedirs(target, exist_ok=True)
    return target


def _run(fn, *args):
    try:
        code = fn(*args)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        sys.exit(2)
    sys.exit(code or 0)


config_option = click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False),
    default=None, help="TOML run configuration (defaults used when omitted).",
)
out_option = click.option(
    "--out", "out", type=click.Path(file_okay=False), default=None,
    help="Output directory (default: config [output].dir or cwd).",
)
row_option = click.option(
    "--row", type=int, default=None, help="Override the analyzed pixel row j."
)


@click.group()
def main():
    """Geometric muon-tomography simulator for the Great Pyramid."""


@main.command("acceptance")
@config_option
@out_option
@click.option("--no-tilt", is_flag=True, help="Use the untilted solid angle for acceptance.")
def cmd_acceptance(config_path, out, no_tilt):
    """Write classes.csv: per-direction-class solid angles and acceptance."""

    def go():
        rc = _load(config_path)
        table = acceptance_map(rc.detector, tilt=not no_tilt)
        rows = zip(
            table.m.tolist(), table.n.tolist(), table.count.tolist(),
            table.theta.tolist(), table.psi.tolist(),
            table.solid_angle_untilted.tolist(), table.solid_angle_tilted.tolist(),
            table.detection_area.tolist(), table.acceptance.tolist(),
        )
        path = os.path.join(_out_dir(rc, out), "classes.csv")
        write_csv(path, CLASSES_HEADER, rows)
        click.echo(f"wrote {len(table)} classes to {path} [{kernels.BACKEND} kernels]")

    _run(go)


def _poses(rc: RunConfig, row: int | None) -> list[DetectorPose]:
    """Poses of the configured plans, or the single configured pose."""
    if not rc.plans:
        pose = _with_row(rc.pose, row)
        pose.validate_row(rc.detector)
        return [pose]
    poses = []
    for spec in rc.plans:
        plan = linear_scan(
            rc.detector, rc.pyramid, spec.axis, spec.standoff_m,
            spec.step_m, spec.count, spec.height_m,
            spec.row if row is None else row,
        )
        poses.extend(plan.poses)
    for pose in poses:
        pose.validate_row(rc.detector)
    return poses


@main.command("sinogram")
@config_option
@out_option
@row_option
def cmd_sinogram(config_path, out, row):
    """Write sinogram.csv and coverage.csv; print the covered fraction."""

    def go():
        rc = _load(config_path)
        poses = _poses(rc, row)
        grid = CoverageGrid(rc.binning)
        directory = _out_dir(rc, out)

        def rows():
            for pose_id, pose in enumerate(poses):
                phi, xi = row_sinogram(rc.detector, pose)
                grid.add(phi, xi)
                for p, x in zip(phi.tolist(), xi.tolist()):
                    yield pose_id, p, x

        write_csv(os.path.join(directory, "sinogram.csv"), SINOGRAM_HEADER, rows())
        phi_edges = grid.spec.phi_edges
        xi_edges = grid.spec.xi_edges
        cov_rows = (
            (phi_edges[i], xi_edges[j], int(grid.occupancy[i, j]))
            for i in range(grid.spec.n_phi)
            for j in range(grid.spec.n_xi)
            if grid.occupancy[i, j] > 0
        )
        write_csv(os.path.join(directory, "coverage.csv"), COVERAGE_HEADER, cov_rows)
        click.echo(
            f"poses={len(poses)} samples={grid.total_hits} "
            f"covered_fraction={grid.covered_fraction!r}"
        )

    _run(go)


@main.command("pathlength")
@config_option
@out_option
@row_option
def cmd_pathlength(config_path, out, row):
    """Write pathlength.csv: clipped pyramid path of every in-row pixel pair."""

    def go():
        rc = _load(config_path)
        pose = _with_row(rc.pose, row)
        pose.validate_row(rc.detector)
        nx = rc.detector.nx
        cols = np.arange(nx)
        front = pixel_world(rc.detector, pose, cols, pose.row, "front")
        back = pixel_world(rc.detector, pose, cols, pose.row, "back")
        fi, bi = np.meshgrid(cols, cols, indexing="ij")
        origins = front[fi.ravel()]
        d = origins - back[bi.ravel()]
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        lengths = path_lengths(rc.pyramid, origins, d)
        rows = zip(
            [0] * (nx * nx), fi.ravel().tolist(), bi.ravel().tolist(),
            lengths.tolist(),
        )
        path = os.path.join(_out_dir(rc, out), "pathlength.csv")
        write_csv(path, PATHLENGTH_HEADER, rows)
        click.echo(f"wrote {nx * nx} path lengths to {path}")

    _run(go)


@main.command("range")
@config_option
@out_option
def cmd_range(config_path, out):
    """Write range.csv: subtension margins per silhouette vertex."""

    def go():
        rc = _load(config_path)
        report = subtends(rc.detector, rc.pose, rc.pyramid)
        rows = sorted(
            ((v.label, v.margin, v.subtended) for v in report.vertices),
            key=lambda r: r[0],
        )
        path = os.path.join(_out_dir(rc, out), "range.csv")
        write_csv(path, RANGE_HEADER, rows)
        click.echo(f"subtended={str(report.subtended).lower()}")
        return 0 if report.subtended else 1

    _run(go)


@main.command("resolution")
@config_option
@out_option
@row_option
def cmd_resolution(config_path, out, row):
    """Write resolution.csv: forward-projected footprint per in-row class."""

    def go():
        rc = _load(config_path)
        pose = _with_row(rc.pose, row)
        pose.validate_row(rc.detector)
        target = rc.resolved_target_distance()
        if target < 0:
            raise ValidationError(
                "target distance resolves negative; set [resolution].target_distance_m"
            )
        cells = resolution_grid(rc.detector, pose, target)
        rows = (
            (c.m, c.center[0], c.center[1], c.extent_x)
            for c in sorted(cells, key=lambda c: c.m)
        )
        path = os.path.join(_out_dir(rc, out), "resolution.csv")
        write_csv(path, RESOLUTION_HEADER, rows)
        central = next(c for c in cells if c.m == 0)
        click.echo(f"center_extent_m={central.extent_x!r} at R={target!r} m")

    _run(go)


if __name__ == "__main__":
    main()
