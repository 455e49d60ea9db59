import math
import random

import pytest

from botrf.errors import UnsupportedFrequencyError
from botrf.profile import fresnel_radius_m
from botrf.propagation import (
    LossModel,
    PropagationMode,
    baseline_loss,
    fspl_db,
    free_space_loss,
    knife_edge_loss_db,
    knife_edge_v,
)

from conftest import grazing_hill_profile, synthetic_profile


class TestFspl:
    def test_link1(self):
        assert fspl_db(12.52, 5815.0) == pytest.approx(129.69, abs=0.01)

    def test_link2(self):
        assert fspl_db(6.77, 5815.0) == pytest.approx(124.35, abs=0.01)

    def test_constant_term(self):
        assert fspl_db(1.0, 1.0) == pytest.approx(32.45, abs=1e-12)

    def test_six_db_per_distance_doubling(self):
        rng = random.Random(9)
        for _ in range(1000):
            d = rng.uniform(0.1, 500.0)
            f = rng.uniform(20.0, 20000.0)
            assert fspl_db(2 * d, f) - fspl_db(d, f) == pytest.approx(
                20.0 * math.log10(2.0), abs=1e-9
            )

    def test_six_db_per_frequency_doubling(self):
        assert fspl_db(10.0, 2000.0) - fspl_db(10.0, 1000.0) == pytest.approx(
            6.0205999, abs=1e-6
        )

    def test_strictly_increasing(self):
        assert fspl_db(11.0, 100.0) > fspl_db(10.0, 100.0)
        assert fspl_db(10.0, 101.0) > fspl_db(10.0, 100.0)

    def test_non_positive_rejected(self):
        with pytest.raises(ValueError):
            fspl_db(0.0, 100.0)
        with pytest.raises(ValueError):
            fspl_db(10.0, -5.0)


class TestKnifeEdgeParameter:
    def test_zero_height(self):
        assert knife_edge_v(0.0, 5.0, 5.0, 5800.0) == 0.0

    def test_height_of_one_fresnel_radius(self):
        f1 = fresnel_radius_m(5.0, 5.0, 5800.0)
        assert knife_edge_v(f1, 5.0, 5.0, 5800.0) == pytest.approx(math.sqrt(2.0), rel=1e-9)

    def test_sign_symmetry(self):
        f1 = fresnel_radius_m(3.0, 7.0, 900.0)
        assert knife_edge_v(-f1, 3.0, 7.0, 900.0) == pytest.approx(-math.sqrt(2.0), rel=1e-9)

    def test_edge_on_endpoint_rejected(self):
        with pytest.raises(ValueError):
            knife_edge_v(1.0, 0.0, 5.0, 900.0)


class TestKnifeEdgeLoss:
    def test_grazing_is_six_db(self):
        assert knife_edge_loss_db(0.0) == pytest.approx(6.03, abs=0.05)

    def test_below_threshold_is_zero(self):
        assert knife_edge_loss_db(-1.0) == 0.0
        assert knife_edge_loss_db(-0.79) == 0.0

    def test_v_2_4(self):
        assert knife_edge_loss_db(2.4) == pytest.approx(20.5, abs=0.1)

    def test_continuous_at_threshold(self):
        assert knife_edge_loss_db(-0.7799999) == pytest.approx(0.0, abs=0.01)

    def test_non_decreasing(self):
        prev = 0.0
        v = -0.78
        while v < 5.0:
            cur = knife_edge_loss_db(v)
            assert cur >= prev - 1e-12
            prev = cur
            v += 0.01


class TestBaselineLoss:
    def test_flat_high_antennas_no_shielding(self):
        prof = synthetic_profile([0.0] * 101, d_km=10.0, tx_h=40.0, rx_h=40.0)
        result = baseline_loss(prof)
        assert result.model is LossModel.KNIFE_EDGE
        assert result.mode is PropagationMode.LINE_OF_SIGHT
        assert result.shielding_db == 0.0
        assert result.model_loss_db == result.fspl_db

    def test_single_grazing_hill(self):
        prof = grazing_hill_profile()
        result = baseline_loss(prof)
        assert result.shielding_db == pytest.approx(6.03, abs=0.1)
        assert result.mode is PropagationMode.DIFFRACTION

    def test_two_grazing_hills_add(self):
        from botrf.profile import earth_bulge_m

        n, d_km, tx_h = 100, 10.0, 30.0
        terrain = [0.0] * (n + 1)
        for idx in (n // 3, 2 * n // 3):
            d = d_km * idx / n
            terrain[idx] = tx_h - earth_bulge_m(d, d_km - d, 4 / 3)
        prof = synthetic_profile(terrain, d_km, tx_h, tx_h)
        result = baseline_loss(prof)
        assert result.shielding_db == pytest.approx(12.06, abs=0.2)

    def test_obstructed_hill_more_than_grazing(self):
        graze = baseline_loss(grazing_hill_profile())
        blocked = baseline_loss(grazing_hill_profile(extra_m=15.0))
        assert blocked.shielding_db > graze.shielding_db

    def test_no_loss_when_nu_below_threshold_everywhere(self):
        # clearance everywhere >= 0.78/sqrt(2) of F1 means no edge fires
        rng = random.Random(12)
        for _ in range(50):
            n = 60
            terrain = [rng.uniform(0.0, 4.0) for _ in range(n + 1)]
            prof = synthetic_profile(terrain, d_km=8.0, tx_h=35.0, rx_h=35.0)
            min_clear = min(p.clearance_fraction for p in prof.interior())
            result = baseline_loss(prof)
            if min_clear >= 0.78 / math.sqrt(2.0) + 1e-9:
                assert result.shielding_db == 0.0

    def test_shielding_identity(self):
        for prof in (
            synthetic_profile([0.0] * 101),
            grazing_hill_profile(),
            grazing_hill_profile(extra_m=25.0),
        ):
            r = baseline_loss(prof)
            assert r.shielding_db == pytest.approx(r.model_loss_db - r.fspl_db, abs=1e-9)


class TestFreeSpaceModel:
    def test_identity(self):
        prof = synthetic_profile([0.0] * 51, d_km=5.0)
        r = free_space_loss(prof)
        assert r.model is LossModel.FSPL
        assert r.model_loss_db == r.fspl_db
        assert r.shielding_db == 0.0
