import math

import pytest

from muontomo import ValidationError
from muontomo.runconfig import RunConfig, parse_config, serialize_config

FULL = """
[detector]
pixel_pitch_cm = 2.0
nx = 480
ny = 240
panel_separation_cm = 200.0

[pyramid]
base_side_m = 230.33
height_m = 138.7

[pose]
standoff_m = 25.0
row = 3

[[plan]]
axis = "x"
standoff_m = 25.0
step_m = 20.0
count = 11

[[plan]]
axis = "y"

[binning]
phi_deg = 1.0
xi_m = 1.0

[resolution]
target_distance_m = 140.165
"""


def test_parse_full():
    rc = parse_config(FULL)
    assert rc.detector.nx == 480
    assert rc.pose.position == (0.0, -(230.33 / 2 + 25.0), 0.0)
    assert rc.pose.row == 3
    assert len(rc.plans) == 2
    assert rc.plans[1].axis == "y"
    assert rc.plans[1].count == 11
    assert rc.target_distance_m == 140.165


def test_empty_config_gives_defaults():
    rc = parse_config("")
    assert rc.detector.nx == 480
    assert rc.pyramid.base_side == 230.33
    assert rc.pose.position[1] == pytest.approx(-140.165)
    assert rc.plans == ()


def test_unknown_key_rejected():
    with pytest.raises(ValidationError, match="pixel_size"):
        parse_config("[detector]\npixel_size = 2.0\n")


def test_unknown_section_rejected():
    with pytest.raises(ValidationError, match="detectors"):
        parse_config("[detectors]\nnx = 4\n")


def test_invalid_toml_rejected():
    with pytest.raises(ValidationError):
        parse_config("[detector\nnx = 4")


def test_standoff_and_explicit_position_conflict():
    with pytest.raises(ValidationError):
        parse_config("[pose]\nstandoff_m = 25.0\nx_m = 1.0\n")


def test_inset_placement_flag():
    rc = parse_config('[pose]\nstandoff_m = 25.0\nplacement = "inset"\n')
    # the shift expression -base/2 + standoff, inside the footprint
    assert rc.pose.position[1] == pytest.approx(-230.33 / 2 + 25.0)


def test_round_trip_idempotent():
    once = serialize_config(parse_config(FULL))
    twice = serialize_config(parse_config(once))
    assert once == twice


def test_resolved_target_distance_default():
    rc = parse_config("[pose]\nstandoff_m = 25.0\n")
    assert rc.resolved_target_distance() == pytest.approx(140.165)
    rc = parse_config(FULL)
    assert rc.resolved_target_distance() == 140.165


def test_yaw_degrees():
    rc = parse_config("[pose]\nx_m = -140.0\nyaw_deg = -90.0\n")
    assert rc.pose.yaw == pytest.approx(-math.pi / 2)
