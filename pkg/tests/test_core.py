import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from irsiot import (SPEED_OF_LIGHT, CarrierConfig, IrsPose, Point3, RngStream, distance, incidence_angles,
                    sample_fading, wavelength)
from irsiot.errors import BehindSurface, DegenerateGeometry, InvalidCarrier

coord = st.floats(-1e4, 1e4, allow_nan=False)
points = st.builds(Point3, coord, coord, coord)


@pytest.mark.parametrize("a, b, expected", [
    ((0, 0, 0), (0, 0, 0), 0.0),
    ((0, 0, 0), (3, 4, 0), 5.0),
    ((1, 2, 3), (4, 6, 15), 13.0),
])
def test_distance_examples(a, b, expected):
    assert distance(Point3(*a), Point3(*b)) == pytest.approx(expected, abs=1e-15)


@given(points, points, points)
def test_distance_is_a_metric(a, b, c):
    assert distance(a, b) >= 0
    assert distance(a, b) == distance(b, a)
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9


def test_point_rejects_non_finite():
    with pytest.raises(DegenerateGeometry):
        Point3(0, math.inf, 0)


def test_wavelength():
    assert wavelength(CarrierConfig(SPEED_OF_LIGHT)) == 1.0
    assert wavelength(CarrierConfig(3e9)) == pytest.approx(0.0999308, rel=1e-6)
    cfg = CarrierConfig(2.4e9)
    assert abs(cfg.wavelength * cfg.f_c - SPEED_OF_LIGHT) <= 1e-12 * SPEED_OF_LIGHT
    with pytest.raises(InvalidCarrier):
        wavelength(0.0)
    with pytest.raises(InvalidCarrier):
        CarrierConfig(0.0)


def test_fading_support_and_moments():
    h = sample_fading(RngStream(11, 0), size=1_000_000)
    assert h.min() >= 0
    assert abs(h.mean() - 1.0) <= 0.005
    assert abs(np.mean(h > 1.0) - math.exp(-1)) <= 0.002


def test_fading_ks_against_exponential():
    h = sample_fading(RngStream(3, 5), size=100_000)
    ks = stats.kstest(h, "expon").statistic
    # asymptotic 1% critical value of the one-sample KS statistic
    assert ks < 1.628 / math.sqrt(len(h))


def test_scalar_draw_is_float():
    h = sample_fading(RngStream(1))
    assert isinstance(h, float) and h >= 0


def test_streams_are_deterministic_and_distinct():
    a = sample_fading(RngStream(42, 7), size=1000)
    b = sample_fading(RngStream(42, 7), size=1000)
    c = sample_fading(RngStream(42, 8), size=1000)
    d = sample_fading(RngStream(43, 7), size=1000)
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5])
def test_stream_rejects_bad_seed(seed):
    with pytest.raises(ValueError):
        RngStream(seed)


def test_incidence_angles_examples():
    pose = IrsPose(Point3(0, 0, 0), (0, 0, 1))
    tt, tr = incidence_angles(pose, Point3(0, 0, 5), Point3(1, 0, 1))
    assert tt == 0.0
    assert tr == pytest.approx(math.pi / 4, abs=1e-15)


def test_incidence_angles_errors():
    pose = IrsPose(Point3(0, 0, 0), (0, 0, 1))
    with pytest.raises(BehindSurface):
        incidence_angles(pose, Point3(3, 0, 0), Point3(0, 0, 1))
    with pytest.raises(BehindSurface):
        incidence_angles(pose, Point3(0, 0, 1), Point3(0, 1, -1))
    with pytest.raises(DegenerateGeometry):
        incidence_angles(pose, Point3(0, 0, 0), Point3(0, 0, 1))


def test_pose_normal_is_unit():
    pose = IrsPose(Point3(1, 2, 3), (3, 0, 4))
    assert abs(np.linalg.norm(pose.normal) - 1) <= 1e-12
    with pytest.raises(DegenerateGeometry):
        IrsPose(Point3(0, 0, 0), (0, 0, 0))


def _rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def test_incidence_angles_rotation_invariant():
    rng = np.random.default_rng(0)
    for _ in range(200):
        normal = rng.normal(size=3)
        normal /= np.linalg.norm(normal)
        center = rng.uniform(-50, 50, 3)
        # nodes in the front half-space
        tx = center + normal * rng.uniform(1, 30) + rng.normal(size=3) * 5
        rx = center + normal * rng.uniform(1, 30) + rng.normal(size=3) * 5
        if (tx - center) @ normal <= 0.1 or (rx - center) @ normal <= 0.1:
            continue
        base = incidence_angles(IrsPose(Point3(*center), tuple(normal)), Point3(*tx), Point3(*rx))
        rot = _rotation(rng)
        turned = incidence_angles(IrsPose(Point3(*(rot @ center)), tuple(rot @ normal)),
                                  Point3(*(rot @ tx)), Point3(*(rot @ rx)))
        assert turned == pytest.approx(base, abs=1e-9)
        assert all(0 <= t < math.pi / 2 for t in base)


@settings(max_examples=50)
@given(st.floats(0.0, 1.5), st.floats(0.1, 100))
def test_incidence_angle_matches_construction(theta, r):
    pose = IrsPose(Point3(0, 0, 0), (0, 0, 1))
    node = Point3(r * math.sin(theta), 0.0, r * math.cos(theta))
    tt, _ = incidence_angles(pose, node, Point3(0, 0, 1))
    assert tt == pytest.approx(theta, abs=1e-9)
