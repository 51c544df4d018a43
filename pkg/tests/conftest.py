import pytest

from muontomo import DetectorConfig, DetectorPose, PyramidModel


@pytest.fixture
def config():
    return DetectorConfig()


@pytest.fixture
def pyramid():
    return PyramidModel()


@pytest.fixture
def reference_pose(pyramid):
    """Centered pose, front panel 25 m outside the near base edge."""
    return DetectorPose((0.0, -(pyramid.half_base + 25.0), 0.0))
