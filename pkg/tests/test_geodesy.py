import math
import random

import pytest

from botrf.geodesy import GeoPoint, distance_km, initial_azimuth_deg, point_at_fraction

# The worked example link ends (admin building, repeater hill, print shop).
EDIF_ADM = GeoPoint(8.5931, -71.1469)
PLAN_MORRO = GeoPoint(8.5086, -71.2221)
PRINT_SHOP = GeoPoint(8.5617, -71.1920)


class TestGeoPoint:
    def test_range_validation(self):
        with pytest.raises(ValueError):
            GeoPoint(91.0, 0.0)
        with pytest.raises(ValueError):
            GeoPoint(0.0, 180.0)
        with pytest.raises(ValueError):
            GeoPoint(float("nan"), 0.0)

    def test_west_longitude_is_negative(self):
        assert EDIF_ADM.lon_deg < 0


class TestDistance:
    def test_link1_distance(self):
        assert distance_km(EDIF_ADM, PLAN_MORRO) == pytest.approx(12.52, rel=0.005)

    def test_link2_distance(self):
        assert distance_km(PLAN_MORRO, PRINT_SHOP) == pytest.approx(6.77, rel=0.005)

    def test_coincident_points(self):
        assert distance_km(EDIF_ADM, EDIF_ADM) == 0.0

    def test_symmetry(self):
        rng = random.Random(7)
        for _ in range(50):
            a = GeoPoint(rng.uniform(-80, 80), rng.uniform(-179, 179))
            b = GeoPoint(rng.uniform(-80, 80), rng.uniform(-179, 179))
            assert distance_km(a, b) == distance_km(b, a)


class TestAzimuth:
    def test_forward_link1(self):
        assert initial_azimuth_deg(EDIF_ADM, PLAN_MORRO) == pytest.approx(221.3, abs=0.3)

    def test_reverse_link1(self):
        assert initial_azimuth_deg(PLAN_MORRO, EDIF_ADM) == pytest.approx(41.3, abs=0.3)

    def test_forward_link2(self):
        assert initial_azimuth_deg(PLAN_MORRO, PRINT_SHOP) == pytest.approx(29.2, abs=0.3)

    def test_reverse_link2(self):
        assert initial_azimuth_deg(PRINT_SHOP, PLAN_MORRO) == pytest.approx(209.3, abs=0.3)

    def test_due_north(self):
        assert initial_azimuth_deg(GeoPoint(0, 0), GeoPoint(1, 0)) == pytest.approx(0.0, abs=1e-9)

    def test_coincident_rejected(self):
        with pytest.raises(ValueError):
            initial_azimuth_deg(EDIF_ADM, EDIF_ADM)

    def test_forward_reverse_differ_by_180_on_short_paths(self):
        rng = random.Random(11)
        for _ in range(100):
            a = GeoPoint(rng.uniform(-60, 60), rng.uniform(-170, 170))
            b = GeoPoint(
                a.lat_deg + rng.uniform(-0.5, 0.5),
                a.lon_deg + rng.uniform(-0.5, 0.5),
            )
            if distance_km(a, b) < 0.1:
                continue
            fwd = initial_azimuth_deg(a, b)
            rev = initial_azimuth_deg(b, a)
            diff = abs((fwd - rev) % 360.0)
            assert min(diff, 360.0 - diff) == pytest.approx(180.0, abs=0.5)


class TestPointAtFraction:
    def test_endpoints(self):
        assert point_at_fraction(EDIF_ADM, PLAN_MORRO, 0.0) == EDIF_ADM
        assert point_at_fraction(EDIF_ADM, PLAN_MORRO, 1.0) == PLAN_MORRO

    def test_midpoint_equidistant(self):
        mid = point_at_fraction(EDIF_ADM, PLAN_MORRO, 0.5)
        da = distance_km(EDIF_ADM, mid)
        db = distance_km(mid, PLAN_MORRO)
        assert abs(da - db) * 1000.0 < 1.0  # within a meter

    def test_fraction_out_of_range(self):
        with pytest.raises(ValueError):
            point_at_fraction(EDIF_ADM, PLAN_MORRO, 1.5)

    def test_distance_monotone_in_fraction(self):
        prev = -1.0
        for i in range(21):
            t = i / 20
            d = distance_km(EDIF_ADM, point_at_fraction(EDIF_ADM, PLAN_MORRO, t))
            assert d > prev or (t == 0 and d == 0.0)
            prev = d

    def test_points_lie_between_ends(self):
        total = distance_km(EDIF_ADM, PLAN_MORRO)
        for i in range(1, 20):
            p = point_at_fraction(EDIF_ADM, PLAN_MORRO, i / 20)
            assert distance_km(EDIF_ADM, p) + distance_km(p, PLAN_MORRO) == pytest.approx(
                total, abs=1e-9 * total + 1e-12
            )
