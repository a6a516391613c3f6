"""Two-tier cellular-IoT link simulator comparing conventional and IRS-assisted micro cells."""

__version__ = "0.1.0"

from .association import (AssociationResult, TierConfig, association_probability, average_device_count,
                          mean_association_probability)
from .channel import (InterferenceConfig, IrsConfig, IrsLinkGeometry, NoiseConfig, PathLossParams, RadioConfig,
                      conventional_received_power, interference_power, irs_link_geometry, irs_received_power,
                      noise_power, scattering_gain)
from .config import dumps_config, loads_config, parse_config
from .core import (SPEED_OF_LIGHT, CarrierConfig, IrsPose, Point3, RngStream, distance, incidence_angles,
                   sample_fading, wavelength)
from .metrics import (LinkMetrics, Payload, link_metrics, sinr, spectral_efficiency, throughput,
                      transmission_delay)
from .model import DevicePlacement, MacroConfig, ScenarioConfig
from .scenario import (ComparisonReport, MetricsSummary, SweepSpec, SweepTable, associate, compare_scenarios,
                       run_scenario, sweep, with_parameter)
