"""Render the simulator's CSV products into figures.

Each figure kind expects one product schema and refuses anything else; the
renderer maps values onto axes but never recomputes or reinterprets them.
All rendering is headless (Agg backend).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaMismatchError(ValueError):
    """The product file's header does not match the figure kind."""


class EmptyDataError(ValueError):
    """The product file has a header but no rows."""


# expected header per figure kind
KINDS = {
    "quiver": [
        "m", "n", "count", "theta_rad", "psi_rad", "solid_angle_untilted_sr",
        "solid_angle_tilted_sr", "detection_area_cm2", "acceptance_cm2sr",
    ],
    "heatmap": [
        "m", "n", "count", "theta_rad", "psi_rad", "solid_angle_untilted_sr",
        "solid_angle_tilted_sr", "detection_area_cm2", "acceptance_cm2sr",
    ],
    "scatter": ["pose_id", "phi_rad", "xi_m"],
    "coverage": ["phi_bin_lo_rad", "xi_bin_lo_m", "hits"],
    "range-overlay": ["vertex", "angular_margin_rad", "subtended"],
    "resolution-grid": ["m", "center_x_m", "center_y_m", "extent_m"],
}


@dataclass(frozen=True)
class FigureSpec:
    product_path: str
    kind: str
    output_path: str
    value_column: str = "solid_angle_tilted_sr"  # heatmap only
    max_points: int = 20000  # subsampling cap for scatter/quiver

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaMismatchError(
                f"unknown figure kind {self.kind!r}; expected one of {sorted(KINDS)}"
            )


def _read_product(spec: FigureSpec) -> dict[str, list[str]]:
    with open(spec.product_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataError(f"{spec.product_path} has no header") from None
        expected = KINDS[spec.kind]
        if header != expected:
            raise SchemaMismatchError(
                f"{spec.product_path}: kind {spec.kind!r} expects columns "
                f"{expected}, found {header}"
            )
        rows = list(reader)
    if not rows:
        raise EmptyDataError(f"{spec.product_path} has no data rows")
    return {name: [row[k] for row in rows] for k, name in enumerate(header)}


def _floats(column: list[str]) -> np.ndarray:
    return np.array([float(v) for v in column])


def render(spec: FigureSpec) -> dict:
    """Render the figure; returns a metadata dict for spot-check harnesses."""
    data = _read_product(spec)
    fig, ax = plt.subplots(figsize=(7, 5.5))
    try:
        meta = _RENDERERS[spec.kind](spec, data, ax)
        fig.tight_layout()
        fig.savefig(spec.output_path)
    finally:
        plt.close(fig)
    meta["output"] = spec.output_path
    return meta


def _render_heatmap(spec, data, ax):
    if spec.value_column not in KINDS["heatmap"][2:]:
        raise SchemaMismatchError(
            f"heatmap value column {spec.value_column!r} not in the classes schema"
        )
    m = _floats(data["m"]).astype(int)
    n = _floats(data["n"]).astype(int)
    theta = _floats(data["theta_rad"])
    psi = _floats(data["psi_rad"])
    values = _floats(data[spec.value_column])
    ms = np.unique(m)
    ns = np.unique(n)
    grid = np.full((len(ns), len(ms)), np.nan)
    grid[np.searchsorted(ns, n), np.searchsorted(ms, m)] = values
    mesh = ax.pcolormesh(
        np.sort(np.unique(theta)), np.sort(np.unique(psi)), grid, shading="nearest"
    )
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("psi [rad]")
    unit = "sr" if "solid_angle" in spec.value_column else spec.value_column.rsplit("_", 1)[-1]
    plt.colorbar(mesh, ax=ax, label=f"{spec.value_column} [{unit}]")
    peak = int(np.argmax(values))
    return {
        "peak_m": int(m[peak]),
        "peak_n": int(n[peak]),
        "peak_theta_rad": float(theta[peak]),
        "peak_psi_rad": float(psi[peak]),
        "peak_value": float(values[peak]),
    }


def _render_quiver(spec, data, ax):
    theta = _floats(data["theta_rad"])
    psi = _floats(data["psi_rad"])
    stride = max(1, len(theta) // spec.max_points)
    theta, psi = theta[::stride], psi[::stride]
    # unit direction of sight decomposed onto the two tilt axes
    ax.quiver(
        np.zeros_like(theta), np.zeros_like(psi),
        np.sin(theta), np.sin(psi),
        angles="xy", scale_units="xy", scale=1, width=1e-3,
    )
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_xlabel("sight x component")
    ax.set_ylabel("sight y component")
    return {"arrows": len(theta)}


def _render_scatter(spec, data, ax):
    phi = _floats(data["phi_rad"])
    xi = _floats(data["xi_m"])
    stride = max(1, len(phi) // spec.max_points)
    ax.scatter(phi[::stride], xi[::stride], s=1, marker=".")
    ax.set_xlabel("phi [rad]")
    ax.set_ylabel("xi [m]")
    return {"points": len(phi), "phi_min_rad": float(phi.min()),
            "phi_max_rad": float(phi.max())}


def _render_coverage(spec, data, ax):
    phi = _floats(data["phi_bin_lo_rad"])
    xi = _floats(data["xi_bin_lo_m"])
    hits = _floats(data["hits"])
    occupied = hits > 0
    ax.scatter(phi[occupied], xi[occupied], s=4, marker="s")
    ax.set_xlabel("phi bin [rad]")
    ax.set_ylabel("xi bin [m]")
    return {"occupied_bins": int(occupied.sum())}


def _render_range_overlay(spec, data, ax):
    labels = data["vertex"]
    margins = _floats(data["angular_margin_rad"])
    flags = [v == "true" for v in data["subtended"]]
    colors = ["tab:green" if f else "tab:red" for f in flags]
    ax.bar(labels, margins, color=colors)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_ylabel("angular margin [rad]")
    ax.tick_params(axis="x", rotation=30)
    return {"all_subtended": all(flags)}


def _render_resolution_grid(spec, data, ax):
    x = _floats(data["center_x_m"])
    y = _floats(data["center_y_m"])
    extent = _floats(data["extent_m"])
    stride = max(1, len(x) // 400)
    for cx, cy, e in zip(x[::stride], y[::stride], extent[::stride]):
        ax.add_patch(
            plt.Rectangle((cx - e / 2, cy - e / 2), e, e, fill=False, linewidth=0.5)
        )
    ax.autoscale_view()
    ax.set_aspect("equal")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    return {"cells": len(x), "min_extent_m": float(extent.min())}


_RENDERERS = {
    "heatmap": _render_heatmap,
    "quiver": _render_quiver,
    "scatter": _render_scatter,
    "coverage": _render_coverage,
    "range-overlay": _render_range_overlay,
    "resolution-grid": _render_resolution_grid,
}
