"""Lambertian optical channel tests."""

import dataclasses
import math

import numpy as np
import pytest

from rfvlc import (InvalidArgumentError, Pose3, VlcParams, lambertian_order,
                   vlc_los_gain, vlc_noise_power, vlc_rx_electrical_power)

# m=1 emitter, unity concentrator (fov 90 deg, n=1), unity filter
_SIMPLE = VlcParams(semi_angle_half_power=60.0, pd_area=1e-4, fov=90.0,
                    optical_filter_gain=1.0, concentrator_refractive_index=1.0,
                    optical_tx_power=1.0, responsivity=0.5)


def _aligned(distance):
    tx = Pose3(0.0, 0.0, 0.0, axis=(0.0, 0.0, 1.0))
    rx = Pose3(0.0, 0.0, distance, axis=(0.0, 0.0, -1.0))
    return tx, rx


class TestLambertianOrder:
    def test_sixty_degrees_is_one(self):
        assert lambertian_order(60.0) == pytest.approx(1.0, rel=1e-12)

    def test_forty_five_degrees_is_two(self):
        # cos 45 = 2^-1/2, so -ln2 / ln(2^-1/2) = 2
        assert lambertian_order(45.0) == pytest.approx(2.0, rel=1e-12)

    def test_thirty_degrees(self):
        expected = -math.log(2.0) / math.log(math.cos(math.radians(30.0)))
        assert lambertian_order(30.0) == pytest.approx(expected, rel=1e-12)
        assert lambertian_order(30.0) == pytest.approx(4.8188, abs=1e-4)

    def test_narrower_beam_higher_order(self):
        orders = [lambertian_order(a) for a in (60.0, 45.0, 30.0, 15.0)]
        assert orders == sorted(orders)

    @pytest.mark.parametrize("angle", [0.0, 90.0, -5.0, 120.0])
    def test_out_of_range(self, angle):
        with pytest.raises(InvalidArgumentError):
            lambertian_order(angle)


class TestLosGain:
    def test_aligned_gain_at_10m(self):
        # (m+1) A / (2 pi d^2) = 2e-4 / (200 pi) with everything else unity
        tx, rx = _aligned(10.0)
        expected = 1e-4 / (100.0 * math.pi)
        assert vlc_los_gain(tx, rx, _SIMPLE) == pytest.approx(expected, rel=1e-12)
        assert vlc_los_gain(tx, rx, _SIMPLE) == pytest.approx(3.1831e-7, rel=1e-4)

    def test_inverse_square_law(self):
        g10 = vlc_los_gain(*_aligned(10.0), _SIMPLE)
        g20 = vlc_los_gain(*_aligned(20.0), _SIMPLE)
        assert g10 / g20 == pytest.approx(4.0, rel=1e-12)
        rng = np.random.default_rng(11)
        for _ in range(50):
            d, k = rng.uniform(1.0, 200.0), rng.uniform(1.1, 5.0)
            ratio = vlc_los_gain(*_aligned(d), _SIMPLE) / vlc_los_gain(*_aligned(k * d), _SIMPLE)
            assert ratio == pytest.approx(k * k, rel=1e-9)

    def test_concentrator_gain(self):
        # n=1.5, fov=60: g = n^2 / sin^2(60 deg) = 3
        params = dataclasses.replace(_SIMPLE, fov=60.0,
                                     concentrator_refractive_index=1.5)
        g = vlc_los_gain(*_aligned(10.0), params)
        expected = 3.0 * 1e-4 / (100.0 * math.pi)
        assert g == pytest.approx(expected, rel=1e-12)

    def test_emission_angle_rolloff(self):
        # m=2 emitter aimed straight up, receiver offset 45 deg off boresight:
        # cos^2(phi) = 1/2 and cos(psi) = cos 45 relative to the aligned case
        params = dataclasses.replace(_SIMPLE, semi_angle_half_power=45.0)
        tx = Pose3(0.0, 0.0, 0.0, axis=(0.0, 0.0, 1.0))
        d = 10.0
        c = d / math.sqrt(2.0)
        rx = Pose3(c, 0.0, c, axis=(0.0, 0.0, -1.0))
        g_aligned = vlc_los_gain(*_aligned(d), params)
        g_offset = vlc_los_gain(tx, rx, params)
        assert g_offset == pytest.approx(g_aligned * 0.5 * math.cos(math.pi / 4),
                                         rel=1e-12)

    def test_zero_outside_fov(self):
        params = dataclasses.replace(_SIMPLE, fov=30.0)
        tx = Pose3(0.0, 0.0, 0.0, axis=(0.0, 0.0, 1.0))
        c = 10.0 / math.sqrt(2.0)
        rx = Pose3(c, 0.0, c, axis=(0.0, 0.0, -1.0))  # incidence 45 > 30 deg
        assert vlc_los_gain(tx, rx, params) == 0.0

    def test_zero_behind_emitter(self):
        tx = Pose3(0.0, 0.0, 5.0, axis=(0.0, 0.0, 1.0))
        rx = Pose3(0.0, 0.0, 0.0, axis=(0.0, 0.0, 1.0))
        assert vlc_los_gain(tx, rx, _SIMPLE) == 0.0

    def test_coincident_poses_rejected(self):
        tx = Pose3(0.0, 0.0, 1.0, axis=(0.0, 0.0, 1.0))
        with pytest.raises(InvalidArgumentError):
            vlc_los_gain(tx, tx, _SIMPLE)


class TestElectricalPower:
    def test_worked_example(self):
        # (0.5 A/W * 1 W * 3.1831e-7)^2
        gain = 1e-4 / (100.0 * math.pi)
        p = vlc_rx_electrical_power(gain, 1.0, _SIMPLE)
        assert p == pytest.approx((0.5 * gain) ** 2, rel=1e-12)
        assert p == pytest.approx(2.533e-14, rel=1e-3)

    def test_square_law_in_optical_power(self):
        gain = 1e-6
        p1 = vlc_rx_electrical_power(gain, 1.0, _SIMPLE)
        p2 = vlc_rx_electrical_power(
            gain, 1.0, dataclasses.replace(_SIMPLE, optical_tx_power=2.0))
        assert p2 / p1 == pytest.approx(4.0, rel=1e-12)

    def test_square_law_in_weather(self):
        # halving the optical field quarters the electrical power
        gain = 1e-6
        p_full = vlc_rx_electrical_power(gain, 1.0, _SIMPLE)
        p_half = vlc_rx_electrical_power(gain, 0.5, _SIMPLE)
        assert p_half / p_full == pytest.approx(0.25, rel=1e-12)

    def test_zero_gain_zero_power(self):
        assert vlc_rx_electrical_power(0.0, 1.0, _SIMPLE) == 0.0

    def test_bad_inputs(self):
        with pytest.raises(InvalidArgumentError):
            vlc_rx_electrical_power(-1e-9, 1.0, _SIMPLE)
        with pytest.raises(InvalidArgumentError):
            vlc_rx_electrical_power(1e-6, 1.5, _SIMPLE)


class TestNoise:
    def test_default_noise_power(self):
        # 1e-21 A^2/Hz * 20 MHz
        assert vlc_noise_power(VlcParams()) == pytest.approx(2e-14, rel=1e-12)

    def test_scales_with_bandwidth(self):
        p = VlcParams()
        wide = dataclasses.replace(p, bandwidth=2 * p.bandwidth)
        assert vlc_noise_power(wide) == pytest.approx(2 * vlc_noise_power(p), rel=1e-12)


class TestParamsCheck:
    def test_defaults_are_clean(self):
        assert VlcParams().check() == []

    def test_bad_fov_reported(self):
        bad = dataclasses.replace(VlcParams(), fov=120.0)
        assert any("fov" in v for v in bad.check())

    def test_bad_area_reported(self):
        bad = dataclasses.replace(VlcParams(), pd_area=0.0)
        assert any("pd_area" in v for v in bad.check())
