"""Monte Carlo simulator for hybrid RF-VLC vehicle-to-infrastructure uplinks."""

from .engine import (MetricEstimate, SweepRow, SweepSpec, SweepTable,
                     confidence_interval, derive_seed, run_sweep)
from .errors import ConfigError, InvalidArgumentError, UnsupportedModelError
from .metrics import (MODE_LA, MODE_NON_LA, MODE_PURE_RF, MODE_PURE_VLC,
                      MODES, TrialOutcome, db_to_linear, dor,
                      instantaneous_rate, minimum_transmission_time, prp,
                      prp_rf_closed_form_no_interference,
                      prp_vlc_no_interference, run_trial, sinr, success,
                      vlc_cutoff_distance, vlc_snr)
from .rf_channel import (FADING_NAKAGAMI, FADING_RAYLEIGH, RfParams,
                         rf_mean_rx_power, rf_noise_power, sample_fading)
from .scenario import (InterfererSet, LaneGeometry, Pose3, ScenarioConfig,
                       WeatherCondition, attenuation_factor,
                       sample_interferers, validate)
from .vlc_channel import (VlcParams, lambertian_order, vlc_los_gain,
                          vlc_noise_power, vlc_rx_electrical_power)

__version__ = "0.1.0"
