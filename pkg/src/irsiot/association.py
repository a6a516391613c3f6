"""Two-tier user association and served-device count."""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from .core import RngStream
from .errors import ConfigInvalid, InvalidPower, InvalidProbability

Z95 = NormalDist().inv_cdf(0.975)
LOAD_FACTOR = 1.28


@dataclass(frozen=True)
class TierConfig:
    """BS densities per m^2, device density per m^2 and macro path-loss exponent."""

    lambda_mac: float
    lambda_mic: float
    lambda_u: float = 0.0
    alpha_mac: float = 4.0

    def __post_init__(self):
        problems = []
        if not self.lambda_mac > 0:
            problems.append(("lambda_mac", "must be > 0"))
        if not self.lambda_mic > 0:
            problems.append(("lambda_mic", "must be > 0"))
        if not self.lambda_u >= 0:
            problems.append(("lambda_u", "must be >= 0"))
        if not self.alpha_mac > 2:
            problems.append(("alpha_mac", "must be > 2"))
        if problems:
            raise ConfigInvalid(problems)


@dataclass(frozen=True)
class AssociationResult:
    A: float
    A_bar: float
    ci_halfwidth: float
    n_devices: float


def _association(tiers: TierConfig, p_mac, p_mic):
    # zero powers are taken in the limit: p_mic -> 0 gives 0, p_mac -> 0 gives 1
    with np.errstate(divide="ignore"):
        ratio = np.asarray(p_mac, dtype=float) / np.asarray(p_mic, dtype=float)
    return 1.0 / (1.0 + (tiers.lambda_mac / tiers.lambda_mic) * ratio ** (2.0 / tiers.alpha_mac))


def association_probability(tiers: TierConfig, p_r_mac, p_r_mic):
    """Probability that a device attaches to the micro tier.

    Pass the conventional micro received power for the non-IRS case or the
    IRS-assisted one for the IRS case; the kernel is the same.
    """
    if np.any(np.asarray(p_r_mac) <= 0) or np.any(np.asarray(p_r_mic) <= 0):
        raise InvalidPower("received powers must be > 0")
    a = _association(tiers, p_r_mac, p_r_mic)
    return float(a) if np.ndim(a) == 0 else a


def average_device_count(tiers: TierConfig, a_bar):
    """Mean number of devices served by a micro BS, 1 + 1.28 lambda_u A_bar / lambda_mic."""
    if not 0 <= a_bar <= 1:
        raise InvalidProbability(f"association probability must be in [0, 1], got {a_bar}")
    return 1.0 + device_count_slope(tiers) * a_bar


def device_count_slope(tiers: TierConfig) -> float:
    return LOAD_FACTOR * tiers.lambda_u / tiers.lambda_mic


def _mean_ci(x):
    n = len(x)
    mean = float(np.mean(x))
    std = float(np.std(x, ddof=1)) if n > 1 else 0.0
    return mean, Z95 * std / math.sqrt(n)


def mean_association_probability(scenario, region_radius: float, n_samples: int,
                                 stream: RngStream, order: str = "after"):
    """Region-averaged association probability and its 95 % CI half-width.

    Devices are placed uniformly in a disc of ``region_radius`` around the
    serving micro BS (at the scenario's device height) with fresh fading per
    sample. The micro power follows ``scenario.mode``.

    ``order="after"`` averages the pointwise probability over samples.
    ``order="before"`` averages the macro and micro powers first and
    evaluates the probability once; its CI comes from the delta method.
    """
    from .model import link_powers, disc_positions

    if not region_radius >= 0:
        raise ConfigInvalid([("region_radius", "must be >= 0")])
    if n_samples < 100:
        raise ConfigInvalid([("n_samples", "must be >= 100")])
    if order not in ("after", "before"):
        raise ConfigInvalid([("order", "must be 'after' or 'before'")])
    gen = stream.generator
    u = gen.random((n_samples, 2))
    fades = gen.standard_exponential((n_samples, scenario.fading_width))
    pos = disc_positions(scenario, u, region_radius)
    p = link_powers(scenario, scenario.mode, pos, fades, interference=False)
    p_mac, p_mic = p["macro"], p["rx_power_dl"]
    if order == "after":
        return _mean_ci(_association(scenario.tiers, p_mac, p_mic))

    x, y = float(np.mean(p_mac)), float(np.mean(p_mic))
    a = float(_association(scenario.tiers, x, y))
    e = 2.0 / scenario.tiers.alpha_mac
    k = scenario.tiers.lambda_mac / scenario.tiers.lambda_mic
    core = a * a * k * e * (x / y) ** e
    grad = np.array([-core / x, core / y])
    cov = np.cov(np.vstack([p_mac, p_mic]))
    var = float(grad @ cov @ grad) / n_samples
    return a, Z95 * math.sqrt(max(var, 0.0))
