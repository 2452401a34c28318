"""Lambertian line-of-sight VLC channel for the IM/DD uplink.

The optical link is deterministic: a generalized Lambertian emitter
(vehicle headlamp), an optical concentrator plus filter at the RSU
photodiode, and square-law direct detection.  Weather attenuates the
optical path before detection, so a loss of c dB/km optically costs
2c dB/km electrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InvalidArgumentError

if TYPE_CHECKING:
    from .scenario import Pose3


@dataclass(frozen=True)
class VlcParams:
    """VLC transmitter, photodetector and noise parameters."""

    optical_tx_power: float = 1.0           # W
    semi_angle_half_power: float = 30.0     # degrees, LED half-power semi-angle
    pd_area: float = 1e-4                   # m^2 (1 cm^2 photodiode)
    fov: float = 60.0                       # degrees, receiver field of view
    optical_filter_gain: float = 1.0
    concentrator_refractive_index: float = 1.5
    responsivity: float = 0.54              # A/W
    noise_psd: float = 1e-21                # A^2/Hz, lumped shot+thermal+ambient
    bandwidth: float = 20e6                 # Hz

    def check(self) -> list[str]:
        out = []
        for name in ("optical_tx_power", "pd_area", "optical_filter_gain",
                     "concentrator_refractive_index", "responsivity",
                     "noise_psd", "bandwidth"):
            if getattr(self, name) <= 0:
                out.append(f"vlc.{name}: must be > 0")
        if not 0.0 < self.semi_angle_half_power < 90.0:
            out.append("vlc.semi_angle_half_power: must be in (0, 90) degrees")
        if not 0.0 < self.fov <= 90.0:
            out.append("vlc.fov: must be in (0, 90] degrees")
        return out


def lambertian_order(semi_angle_half_power: float) -> float:
    """Lambertian mode number m = -ln 2 / ln(cos(half-power semi-angle))."""
    if not 0.0 < semi_angle_half_power < 90.0:
        raise InvalidArgumentError(
            f"semi_angle_half_power must be in (0, 90), got {semi_angle_half_power!r}")
    return -math.log(2.0) / math.log(math.cos(math.radians(semi_angle_half_power)))


def vlc_los_gain(tx: "Pose3", rx: "Pose3", params: VlcParams) -> float:
    """DC channel gain of the LOS path from emitter tx to detector rx.

    gain = (m+1) A / (2 pi d^2) * cos^m(phi) * T_s * g(psi) * cos(psi)
    with phi the emission angle off the tx boresight and psi the incidence
    angle off the rx normal.  Zero outside the receiver FOV or behind the
    emitter.
    """
    dx = rx.x - tx.x
    dy = rx.y - tx.y
    dz = rx.z - tx.z
    d2 = dx * dx + dy * dy + dz * dz
    if d2 == 0.0:
        raise InvalidArgumentError("tx and rx poses coincide")
    d = math.sqrt(d2)

    cos_phi = (dx * tx.axis[0] + dy * tx.axis[1] + dz * tx.axis[2]) / d
    if cos_phi <= 0.0:
        return 0.0
    # rx -> tx direction against the receiver normal
    cos_psi = (-dx * rx.axis[0] - dy * rx.axis[1] - dz * rx.axis[2]) / d
    psi_c = math.radians(params.fov)
    if cos_psi < math.cos(psi_c):
        return 0.0

    m = lambertian_order(params.semi_angle_half_power)
    n = params.concentrator_refractive_index
    concentrator = n * n / (math.sin(psi_c) ** 2)
    return ((m + 1.0) * params.pd_area / (2.0 * math.pi * d2)
            * cos_phi ** m
            * params.optical_filter_gain * concentrator * cos_psi)


def vlc_rx_electrical_power(gain: float, weather_factor: float,
                            params: VlcParams) -> float:
    """Electrical signal power after square-law detection.

    (responsivity * optical power * gain * weather factor)^2; the weather
    factor multiplies the optical power, hence the squared penalty.
    """
    if gain < 0:
        raise InvalidArgumentError("gain must be >= 0")
    if not 0.0 <= weather_factor <= 1.0:
        raise InvalidArgumentError("weather_factor must be in [0, 1]")
    photocurrent = params.responsivity * params.optical_tx_power * gain * weather_factor
    return photocurrent * photocurrent


def vlc_noise_power(params: VlcParams) -> float:
    """Flat electrical noise power: PSD times receiver bandwidth."""
    return params.noise_psd * params.bandwidth
