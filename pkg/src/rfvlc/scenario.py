"""Intersection scenario: geometry, weather, and random interferer deployment.

Two straight lanes cross at the origin: the desired vehicle's lane runs
along the x-axis, the perpendicular lane along the y-axis.  The RSU sits on
a lamp post above the intersection.  Interfering vehicles form a 1-D
Poisson point process on each lane centerline, thinned by the channel
access probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidArgumentError
from .rf_channel import RfParams
from .vlc_channel import VlcParams

# No interferer may fall within this distance of the desired vehicle
# (vehicles cannot physically overlap; also avoids singular draws).
EXCLUSION_RADIUS_M = 1.0

_WEATHER_KINDS = ("clear", "rain", "fog", "dry_snow")

# kind -> (descriptor name, descriptor value, attenuation dB/km)
_WEATHER_PRESETS = {
    "clear": (None, None, 0.0),
    "rain": ("rain_rate_mm_per_hr", 90.0, 21.9),
    "fog": ("visibility_km", 0.05, 78.8),
    "dry_snow": ("snow_rate_mm_per_hr", 10.0, 131.0),
}


@dataclass(frozen=True)
class Pose3:
    """Position in meters plus a unit axis (boresight or receiver normal)."""

    x: float
    y: float
    z: float
    axis: tuple[float, float, float]

    def __post_init__(self):
        norm = math.sqrt(sum(a * a for a in self.axis))
        if abs(norm - 1.0) > 1e-9:
            raise InvalidArgumentError(f"axis must be a unit vector, norm={norm!r}")
        if self.z < 0:
            raise InvalidArgumentError(f"z must be >= 0, got {self.z!r}")

    def position(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class WeatherCondition:
    """Weather kind with its optical attenuation coefficient.

    descriptor_value is the rain rate (mm/hr), visibility (km) or snow rate
    (mm/hr) for the built-in presets, None for clear weather.
    """

    kind: str
    descriptor_name: str | None
    descriptor_value: float | None
    attenuation_db_per_km: float

    def __post_init__(self):
        if self.kind not in _WEATHER_KINDS:
            raise InvalidArgumentError(f"unknown weather kind {self.kind!r}")
        if self.attenuation_db_per_km < 0:
            raise InvalidArgumentError("attenuation_db_per_km must be >= 0")
        if self.kind == "clear" and self.attenuation_db_per_km != 0.0:
            raise InvalidArgumentError("clear weather must have zero attenuation")

    @classmethod
    def preset(cls, kind: str) -> "WeatherCondition":
        if kind not in _WEATHER_PRESETS:
            raise InvalidArgumentError(f"unknown weather kind {kind!r}")
        name, value, att = _WEATHER_PRESETS[kind]
        return cls(kind=kind, descriptor_name=name, descriptor_value=value,
                   attenuation_db_per_km=att)


def _default_rsu_pose() -> Pose3:
    # Lamp-post RSU 5 m above the intersection, receiver normal tilted 45
    # degrees downward toward the desired vehicle's lane (+x).
    s = 1.0 / math.sqrt(2.0)
    return Pose3(0.0, 0.0, 5.0, axis=(s, 0.0, -s))


@dataclass(frozen=True)
class LaneGeometry:
    """Lane layout and transmitter/receiver mounting heights."""

    lane_half_length: float = 500.0
    lane_x_offset: float = 0.0   # x-offset of the perpendicular (y-axis) lane
    lane_y_offset: float = 0.0   # y-offset of the desired (x-axis) lane
    rsu_pose: Pose3 = field(default_factory=_default_rsu_pose)
    tx_height: float = 0.75      # vehicle headlamp height

    def __post_init__(self):
        if self.lane_half_length <= 0:
            raise InvalidArgumentError("lane_half_length must be > 0")
        if self.tx_height <= 0:
            raise InvalidArgumentError("tx_height must be > 0")
        if self.rsu_pose.z <= self.tx_height:
            raise InvalidArgumentError("rsu_pose.z must exceed tx_height")


@dataclass(frozen=True)
class InterfererSet:
    """Transmit-active interferers for one trial, both lanes."""

    positions: tuple[Pose3, ...]
    lane_tags: tuple[str, ...]   # "same" or "perpendicular", parallel to positions

    def __post_init__(self):
        if len(self.positions) != len(self.lane_tags):
            raise InvalidArgumentError("positions and lane_tags length mismatch")

    @property
    def n_same(self) -> int:
        return sum(1 for t in self.lane_tags if t == "same")

    @property
    def n_perpendicular(self) -> int:
        return sum(1 for t in self.lane_tags if t == "perpendicular")


def attenuation_factor(attenuation_db_per_km: float, distance_m: float) -> float:
    """Beer-Lambert transmission factor for an optical path.

    Returns 10**(-coeff * (distance/1000) / 10), in (0, 1].
    """
    if attenuation_db_per_km < 0:
        raise InvalidArgumentError("attenuation_db_per_km must be >= 0")
    if distance_m < 0:
        raise InvalidArgumentError("distance_m must be >= 0")
    return 10.0 ** (-attenuation_db_per_km * (distance_m / 1000.0) / 10.0)


def _default_vlc() -> VlcParams:
    return VlcParams()


def _default_rf() -> RfParams:
    return RfParams()


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one experiment.

    Defaults reproduce the calibrated intersection case study; see
    docs/CALIBRATION.md for how the channel defaults and thresholds were
    chosen.
    """

    geometry: LaneGeometry = field(default_factory=LaneGeometry)
    weather: WeatherCondition = field(default_factory=lambda: WeatherCondition.preset("clear"))
    lambda_density: float = 0.01       # vehicles per meter on each lane
    rho_access: float = 0.01           # interferer channel access probability
    rho_a: float = 0.9                 # desired-vehicle transmission probability
    beta_ov: float = 0.8               # link-aggregation overhead factor
    distance_r: float = 100.0          # RSU <-> desired vehicle, meters
    payload_h: float = 50.0 * 1024.0   # bytes (50 KB, 1 KB = 1024 bytes)
    vlc: VlcParams = field(default_factory=_default_vlc)
    rf: RfParams = field(default_factory=_default_rf)
    # Decode thresholds.  The VLC threshold is a calibration outcome: it
    # places the deterministic VLC cutoff near 122 m so the pure-VLC and
    # pure-RF reliability curves cross where the case study expects.
    sinr_threshold_vlc_db: float = -25.7
    sinr_threshold_rf_db: float = 5.0

    def desired_pose(self) -> Pose3:
        """Desired vehicle on its lane, headlamp aimed at the intersection."""
        return Pose3(self.distance_r, self.geometry.lane_y_offset,
                     self.geometry.tx_height, axis=(-1.0, 0.0, 0.0))

    def with_distance(self, distance_r: float) -> "ScenarioConfig":
        return replace(self, distance_r=distance_r)

    def with_weather(self, weather: WeatherCondition) -> "ScenarioConfig":
        return replace(self, weather=weather)


def validate(config: ScenarioConfig) -> list[str]:
    """Check every configuration invariant; empty list means ok."""
    violations = []
    if config.lambda_density < 0:
        violations.append("lambda_density: must be >= 0")
    if not 0.0 <= config.rho_access <= 1.0:
        violations.append("rho_access: must be in [0, 1]")
    if not 0.0 < config.rho_a <= 1.0:
        violations.append("rho_a: must be in (0, 1]")
    if not 0.0 < config.beta_ov <= 1.0:
        violations.append("beta_ov: must be in (0, 1]")
    if config.distance_r <= 0:
        violations.append("distance_r: must be > 0")
    if config.payload_h <= 0:
        violations.append("payload_h: must be > 0")
    if config.sinr_threshold_vlc_db is None:
        violations.append("sinr_threshold_vlc_db: missing")
    if config.sinr_threshold_rf_db is None:
        violations.append("sinr_threshold_rf_db: missing")
    violations.extend(config.vlc.check())
    violations.extend(config.rf.check())
    return violations


def sample_interferers(config: ScenarioConfig, rng: np.random.Generator) -> InterfererSet:
    """Draw one interferer deployment.

    Each lane carries a homogeneous Poisson point process of density
    lambda * rho over [-L, L]; points within EXCLUSION_RADIUS_M of the
    desired vehicle are removed.  The same active set is later used for
    both the VLC and RF links.
    """
    geo = config.geometry
    L = geo.lane_half_length
    mean = config.lambda_density * config.rho_access * 2.0 * L
    h = geo.tx_height
    desired = (config.distance_r, geo.lane_y_offset, h)

    positions: list[Pose3] = []
    tags: list[str] = []

    # Same lane (along x).  Boresight points toward the intersection.
    # Position draws are skipped entirely for empty lanes, so the stream
    # consumption per trial is (poisson, uniforms?, poisson, uniforms?).
    n_same = int(rng.poisson(mean))
    xs = rng.uniform(-L, L, n_same) if n_same else ()
    for x in xs:
        px, py = float(x), geo.lane_y_offset
        dx = px - desired[0]
        if dx * dx + (py - desired[1]) ** 2 <= EXCLUSION_RADIUS_M ** 2:
            continue
        ax = -1.0 if x >= 0 else 1.0
        positions.append(Pose3(px, py, h, axis=(ax, 0.0, 0.0)))
        tags.append("same")

    # Perpendicular lane (along y).
    n_perp = int(rng.poisson(mean))
    ys = rng.uniform(-L, L, n_perp) if n_perp else ()
    for y in ys:
        px, py = geo.lane_x_offset, float(y)
        if (px - desired[0]) ** 2 + (py - desired[1]) ** 2 <= EXCLUSION_RADIUS_M ** 2:
            continue
        ay = -1.0 if y >= 0 else 1.0
        positions.append(Pose3(px, py, h, axis=(0.0, ay, 0.0)))
        tags.append("perpendicular")

    return InterfererSet(positions=tuple(positions), lane_tags=tuple(tags))
