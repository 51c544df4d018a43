import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muontomo import (
    BoundsError, DetectorConfig, InvalidPairError, PixelIndex,
    ValidationError, direction_classes, pixel_center, total_path_count,
    trajectory,
)
from muontomo.detector import class_arrays

from _oracles import enumerate_pair_classes


class TestConfig:
    def test_defaults(self, config):
        assert config.pixels_per_panel == 115200

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(nx=0),
            dict(ny=0),
            dict(pixel_pitch=0.0),
            dict(pixel_pitch=-1.0),
            dict(panel_separation=0.0),
            dict(nx=481),          # exceeds the 9.6 m container width
            dict(panel_separation=201.0),  # exceeds the 2 m container depth
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            DetectorConfig(**kwargs)


class TestPixelCenter:
    def test_first_pixel(self, config):
        assert np.allclose(pixel_center(config, PixelIndex(0, 0)), [1, 1, 0])

    def test_last_column(self, config):
        assert np.allclose(pixel_center(config, PixelIndex(479, 0)), [959, 1, 0])

    def test_mid_grid_back(self, config):
        got = pixel_center(config, PixelIndex(240, 120, "back"))
        # brute-force formula: pitch*i + pitch/2
        assert np.allclose(got, [2 * 240 + 1, 2 * 120 + 1, -200])
        assert np.allclose(got, [481, 241, -200])

    @pytest.mark.parametrize("i,j", [(-1, 0), (480, 0), (0, -1), (0, 240)])
    def test_out_of_bounds(self, config, i, j):
        with pytest.raises(BoundsError):
            pixel_center(config, PixelIndex(i, j))


class TestTrajectory:
    def test_aligned_pair_is_straight_ahead(self, config):
        t = trajectory(config, PixelIndex(0, 0, "front"), PixelIndex(0, 0, "back"))
        assert np.allclose(t.direction, [0, 0, 1])

    def test_one_pixel_offset(self, config):
        t = trajectory(config, PixelIndex(1, 0, "front"), PixelIndex(0, 0, "back"))
        expect = np.array([2.0, 0.0, 200.0])
        assert np.allclose(t.direction, expect / np.linalg.norm(expect))

    def test_corner_to_corner(self, config):
        t = trajectory(
            config, PixelIndex(479, 239, "front"), PixelIndex(0, 0, "back")
        )
        expect = np.array([958.0, 478.0, 200.0])
        assert np.allclose(t.direction, expect / np.linalg.norm(expect))

    def test_same_panel_rejected(self, config):
        with pytest.raises(InvalidPairError):
            trajectory(config, PixelIndex(0, 0, "front"), PixelIndex(1, 0, "front"))

    def test_displacement_matches_class(self):
        cfg = DetectorConfig(nx=8, ny=8)
        rng = np.random.default_rng(7)
        for _ in range(50):
            fi, bi = rng.integers(0, 8, 2)
            fj, bj = rng.integers(0, 8, 2)
            t = trajectory(
                cfg, PixelIndex(int(fi), int(fj), "front"),
                PixelIndex(int(bi), int(bj), "back"),
            )
            d = np.array(t.direction)
            expect = np.array(
                [(fi - bi) * cfg.pixel_pitch, (fj - bj) * cfg.pixel_pitch,
                 cfg.panel_separation]
            )
            assert np.allclose(d, expect / np.linalg.norm(expect))


class TestPathCount:
    def test_defaults(self, config):
        assert total_path_count(config) == 13_271_040_000

    def test_single_pixel(self):
        assert total_path_count(DetectorConfig(nx=1, ny=1)) == 1

    def test_small_grid_matches_enumeration(self):
        cfg = DetectorConfig(nx=4, ny=3)
        assert total_path_count(cfg) == 144
        assert total_path_count(cfg) == sum(enumerate_pair_classes(4, 3).values())


class TestDirectionClasses:
    def test_default_class_count(self, config):
        mm, nn, count, sight = class_arrays(config)
        assert len(mm) == 959 * 479 == 459_361

    def test_two_by_one(self):
        classes = direction_classes(DetectorConfig(nx=2, ny=1))
        by_m = {c.m: c.count for c in classes}
        assert by_m == {-1: 1, 0: 2, 1: 1}

    def test_straight_ahead_class(self, config):
        classes = {(c.m, c.n): c for c in direction_classes(config)}
        c = classes[(0, 0)]
        assert c.count == 115200
        assert np.allclose(c.sight, [0, 0, 1])

    def test_brute_force_small_grid(self):
        cfg = DetectorConfig(nx=4, ny=3)
        expected = enumerate_pair_classes(4, 3)
        got = {(c.m, c.n): c.count for c in direction_classes(cfg)}
        assert got == dict(expected)

    @given(nx=st.integers(1, 8), ny=st.integers(1, 8))
    @settings(max_examples=25, deadline=None)
    def test_count_conservation(self, nx, ny):
        _, _, count, _ = class_arrays(DetectorConfig(nx=nx, ny=ny))
        assert int(count.sum()) == (nx * ny) ** 2
        assert (count > 0).all()

    def test_antipodal_symmetry(self):
        classes = {(c.m, c.n): c for c in direction_classes(DetectorConfig(nx=6, ny=5))}
        for (m, n), c in classes.items():
            anti = classes[(-m, -n)]
            assert anti.count == c.count
            assert np.allclose(anti.sight[:2], [-c.sight[0], -c.sight[1]])
            assert anti.sight[2] == c.sight[2]

    def test_sight_unit_norm(self, config):
        _, _, _, sight = class_arrays(config)
        assert np.abs(np.linalg.norm(sight, axis=1) - 1).max() < 1e-12
