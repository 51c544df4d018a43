"""Deterministic CSV data products: shortest round-trip floats, atomic writes."""
from __future__ import annotations

import os
import tempfile
from collections.abc import Iterable

import numpy as np

CLASSES_HEADER = [
    "m", "n", "count", "theta_rad", "psi_rad", "solid_angle_untilted_sr",
    "solid_angle_tilted_sr", "detection_area_cm2", "acceptance_cm2sr",
]
SINOGRAM_HEADER = ["pose_id", "phi_rad", "xi_m"]
COVERAGE_HEADER = ["phi_bin_lo_rad", "xi_bin_lo_m", "hits"]
RESOLUTION_HEADER = ["m", "center_x_m", "center_y_m", "extent_m"]
PATHLENGTH_HEADER = ["pose_id", "front_i", "back_i", "length_m"]
RANGE_HEADER = ["vertex", "angular_margin_rad", "subtended"]


def fmt(value) -> str:
    """Shortest decimal that round-trips; ints stay ints, bools lowercase."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: str, header: list[str], rows: Iterable[Iterable]) -> None:
    """Write UTF-8, comma-delimited, LF-terminated CSV via temp file + rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(fmt(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
