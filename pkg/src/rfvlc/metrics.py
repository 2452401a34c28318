"""Coupled per-trial SINR draws and the PRP / DOR / rate metrics.

One trial shares a single interferer deployment between the optical and
radio links: the VLC SINR is fully deterministic given the deployment,
while every RF power (desired and interfering) gets an independent fading
draw.  The four operating modes are evaluated on the same TrialOutcome, so
mode comparisons are exact event inclusions rather than statistical ones.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, UnsupportedModelError
from .estimate import MetricEstimate, proportion_estimate
from .rf_channel import (FADING_RAYLEIGH, RfParams, rf_mean_rx_power,
                         rf_noise_power, sample_fading)
from .scenario import ScenarioConfig, attenuation_factor, sample_interferers
from .vlc_channel import (VlcParams, vlc_los_gain, vlc_noise_power,
                          vlc_rx_electrical_power)

MODE_PURE_VLC = "pure_vlc"
MODE_PURE_RF = "pure_rf"
MODE_LA = "la"
MODE_NON_LA = "non_la"
MODES = (MODE_PURE_VLC, MODE_PURE_RF, MODE_LA, MODE_NON_LA)


@dataclass(frozen=True)
class TrialOutcome:
    """SINRs of both links for one coupled Monte Carlo draw."""

    sinr_vlc: float
    sinr_rf: float
    n_interferers_same: int
    n_interferers_perp: int


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def sinr(signal: float, interference_sum: float, noise: float) -> float:
    if noise <= 0:
        raise InvalidArgumentError("noise must be > 0")
    if signal < 0 or interference_sum < 0:
        raise InvalidArgumentError("signal and interference must be >= 0")
    return signal / (interference_sum + noise)


# Identity-keyed cache: hashing a nested frozen config on every trial is
# measurably slower than the trial itself.
_statics_cache: dict[int, tuple] = {}


def _statics(config: ScenarioConfig):
    key = id(config)
    hit = _statics_cache.get(key)
    if hit is not None and hit[0]() is config:
        return hit[1]
    value = _compute_statics(config)
    if len(_statics_cache) > 1024:
        _statics_cache.clear()
    _statics_cache[key] = (weakref.ref(config), value)
    return value


def _compute_statics(config: ScenarioConfig):
    """Deterministic per-config quantities reused across trials."""
    rsu = config.geometry.rsu_pose
    desired = config.desired_pose()
    dx = rsu.x - desired.x
    dy = rsu.y - desired.y
    dz = rsu.z - desired.z
    d3d = math.sqrt(dx * dx + dy * dy + dz * dz)

    gain = vlc_los_gain(desired, rsu, config.vlc)
    wfac = attenuation_factor(config.weather.attenuation_db_per_km, d3d)
    s_vlc = vlc_rx_electrical_power(gain, wfac, config.vlc)
    n_vlc = vlc_noise_power(config.vlc)
    s_rf_mean = rf_mean_rx_power(d3d, config.rf)
    n_rf = rf_noise_power(config.rf)
    return rsu, d3d, s_vlc, n_vlc, s_rf_mean, n_rf


def vlc_snr(config: ScenarioConfig) -> float:
    """Deterministic no-interference VLC SNR of the desired link."""
    _, _, s_vlc, n_vlc, _, _ = _statics(config)
    return s_vlc / n_vlc


def run_trial(config: ScenarioConfig, rng: np.random.Generator) -> TrialOutcome:
    """One coupled draw: deployment, then both links' SINRs.

    The random stream is consumed in a weather-independent order
    (deployment draws, desired RF fading, per-interferer RF fading), so
    runs that differ only in weather see identical randomness.
    """
    rsu, _, s_vlc, n_vlc, s_rf_mean, n_rf = _statics(config)
    interferers = sample_interferers(config, rng)

    i_vlc = 0.0
    i_rf = 0.0
    coeff = config.weather.attenuation_db_per_km
    desired_fade = sample_fading(config.rf, rng)
    for pose in interferers.positions:
        ddx = rsu.x - pose.x
        ddy = rsu.y - pose.y
        ddz = rsu.z - pose.z
        d_k = math.sqrt(ddx * ddx + ddy * ddy + ddz * ddz)
        fade = sample_fading(config.rf, rng)
        i_rf += rf_mean_rx_power(d_k, config.rf) * fade
        g_k = vlc_los_gain(pose, rsu, config.vlc)
        if g_k > 0.0:
            w_k = attenuation_factor(coeff, d_k)
            i_vlc += vlc_rx_electrical_power(g_k, w_k, config.vlc)

    return TrialOutcome(
        sinr_vlc=sinr(s_vlc, i_vlc, n_vlc),
        sinr_rf=sinr(s_rf_mean * desired_fade, i_rf, n_rf),
        n_interferers_same=interferers.n_same,
        n_interferers_perp=interferers.n_perpendicular,
    )


def success(outcome: TrialOutcome, mode: str,
            theta_vlc: float, theta_rf: float) -> bool:
    """Packet reception for one trial under the given mode.

    Link aggregation duplicates the packet on both links, so it succeeds
    if either link decodes; best-link selection cannot beat that, so the
    non-aggregated hybrid shares the same reception event.
    """
    if theta_vlc <= 0 or theta_rf <= 0:
        raise InvalidArgumentError("thresholds must be > 0")
    ok_v = outcome.sinr_vlc >= theta_vlc
    ok_r = outcome.sinr_rf >= theta_rf
    if mode == MODE_PURE_VLC:
        return ok_v
    if mode == MODE_PURE_RF:
        return ok_r
    if mode in (MODE_LA, MODE_NON_LA):
        return ok_v or ok_r
    raise InvalidArgumentError(f"unknown mode {mode!r}")


def prp(outcomes, mode: str, theta_vlc: float, theta_rf: float) -> MetricEstimate:
    """Packet reception probability over a trial set."""
    if not outcomes:
        raise InvalidArgumentError("outcomes must be nonempty")
    wins = sum(1 for o in outcomes if success(o, mode, theta_vlc, theta_rf))
    return proportion_estimate(wins, len(outcomes))


def instantaneous_rate(outcome: TrialOutcome, mode: str,
                       config: ScenarioConfig) -> float:
    """Shannon-form achievable rate for one trial, in bits/second.

    The desired vehicle's access probability rho_a scales every mode; the
    aggregation overhead beta_ov scales only the aggregated sum.
    """
    r_v = config.vlc.bandwidth * math.log2(1.0 + outcome.sinr_vlc)
    r_r = config.rf.bandwidth * math.log2(1.0 + outcome.sinr_rf)
    if mode == MODE_PURE_VLC:
        return config.rho_a * r_v
    if mode == MODE_PURE_RF:
        return config.rho_a * r_r
    if mode == MODE_NON_LA:
        return config.rho_a * max(r_v, r_r)
    if mode == MODE_LA:
        return config.beta_ov * config.rho_a * (r_v + r_r)
    raise InvalidArgumentError(f"unknown mode {mode!r}")


def minimum_transmission_time(rate_bps: float, payload_bytes: float) -> float:
    """Seconds to push the payload at the given rate; inf at zero rate."""
    if rate_bps <= 0.0:
        return math.inf
    return 8.0 * payload_bytes / rate_bps


def dor(outcomes, mode: str, config: ScenarioConfig, t_th: float) -> MetricEstimate:
    """Delay outage rate: fraction of trials whose MTT exceeds t_th."""
    if not outcomes:
        raise InvalidArgumentError("outcomes must be nonempty")
    if t_th <= 0:
        raise InvalidArgumentError("t_th must be > 0")
    late = 0
    for o in outcomes:
        rate = instantaneous_rate(o, mode, config)
        if minimum_transmission_time(rate, config.payload_h) > t_th:
            late += 1
    return proportion_estimate(late, len(outcomes))


def prp_rf_closed_form_no_interference(distance: float, rf: RfParams,
                                       theta: float) -> float:
    """Exact interference-free RF PRP under Rayleigh fading.

    P(mean_power * g >= theta * noise) = exp(-theta * N / P_mean) for an
    exponential unit-mean power gain; validation oracle for lambda = 0.
    """
    if rf.fading != FADING_RAYLEIGH:
        raise UnsupportedModelError("closed form requires Rayleigh fading")
    p_mean = rf_mean_rx_power(distance, rf)
    return math.exp(-theta * rf_noise_power(rf) / p_mean)


def prp_vlc_no_interference(config: ScenarioConfig, theta: float) -> int:
    """Deterministic interference-free VLC PRP: 1 iff SNR >= theta."""
    return 1 if vlc_snr(config) >= theta else 0


def vlc_cutoff_distance(config: ScenarioConfig, theta: float,
                        lo: float = 10.0, hi: float = 1000.0,
                        tol: float = 1e-3) -> float:
    """Distance where the deterministic VLC SNR crosses theta, by bisection.

    Requires SNR(lo) >= theta > SNR(hi); the SNR is strictly decreasing in
    distance over the bracketing range for the default geometry (closer
    than ~10 m the headlamp no longer points at the lamp-post receiver,
    so the bracket starts beyond the near field).
    """
    f_lo = vlc_snr(config.with_distance(lo)) - theta
    f_hi = vlc_snr(config.with_distance(hi)) - theta
    if f_lo < 0 or f_hi >= 0:
        raise InvalidArgumentError("cutoff is not bracketed by [lo, hi]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if vlc_snr(config.with_distance(mid)) >= theta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
