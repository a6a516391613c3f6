"""Received-power, noise and interference models.

All kernels accept scalars or numpy arrays (broadcasting) so the scenario
engine can evaluate many replications at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import IrsPose, Point3, RngStream, distance, incidence_angles, sample_fading
from .errors import BehindSurface, ConfigInvalid, DegenerateGeometry, InvalidBandwidth, InvalidCarrier

BOLTZMANN = 1.380649e-23  # J/K, exact in SI
FOUR_PI_SQ = (4.0 * math.pi) ** 2


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _require(problems):
    problems = [(k, m) for k, m in problems if m]
    if problems:
        raise ConfigInvalid(problems)


@dataclass(frozen=True)
class RadioConfig:
    """Micro-tier transmit powers (W) and bandwidths (Hz)."""

    p_t_downlink: float
    p_t_uplink: float
    b_downlink: float
    b_uplink: float

    def __post_init__(self):
        _require((name, "must be > 0" if not getattr(self, name) > 0 else None)
                 for name in ("p_t_downlink", "p_t_uplink", "b_downlink", "b_uplink"))


@dataclass(frozen=True)
class PathLossParams:
    """Distance exponent ``alpha`` and the power of the wavelength in the
    numerator. ``lambda_exponent=1`` follows the conventional-link model as
    published; ``2`` gives the Friis form."""

    alpha: float
    lambda_exponent: int = 1

    def __post_init__(self):
        _require([
            ("alpha", "must be > 0" if not self.alpha > 0 else None),
            ("lambda_exponent", "must be 1 or 2" if self.lambda_exponent not in (1, 2) else None),
        ])


@dataclass(frozen=True)
class IrsConfig:
    """Panel of ``M x N_elem`` elements of size ``d_x x d_y``.

    ``theta_t``/``theta_r`` override angles derived from ``pose`` when given.
    """

    M: int
    N_elem: int
    d_x: float
    d_y: float
    A: float = 1.0
    G_t: float = 1.0
    G_r: float = 1.0
    pose: Optional[IrsPose] = None
    theta_t: Optional[float] = None
    theta_r: Optional[float] = None

    def __post_init__(self):
        def _angle(v):
            if v is None:
                return None
            return "must be in [0, pi/2)" if not 0 <= v < math.pi / 2 else None

        _require([
            ("M", "must be an integer >= 1" if not (float(self.M).is_integer() and self.M >= 1) else None),
            ("N_elem", "must be an integer >= 1" if not (float(self.N_elem).is_integer() and self.N_elem >= 1) else None),
            ("d_x", "must be > 0" if not self.d_x > 0 else None),
            ("d_y", "must be > 0" if not self.d_y > 0 else None),
            ("A", "must be in [0, 1]" if not 0 <= self.A <= 1 else None),
            ("G_t", "must be > 0" if not self.G_t > 0 else None),
            ("G_r", "must be > 0" if not self.G_r > 0 else None),
            ("theta_t", _angle(self.theta_t)),
            ("theta_r", _angle(self.theta_r)),
        ])
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N_elem", int(self.N_elem))


@dataclass(frozen=True)
class IrsLinkGeometry:
    """Cascaded-path geometry. Fields may be arrays of equal shape."""

    d1: float
    d2: float
    theta_t: float = 0.0
    theta_r: float = 0.0


def irs_link_geometry(irs: IrsConfig, bs: Point3, device) -> IrsLinkGeometry:
    """Build the BS -> IRS -> device geometry from the IRS pose.

    ``device`` is a :class:`Point3` or an ``(n, 3)`` array of positions.
    Configured angles take precedence over pose-derived ones.
    """
    if irs.pose is None:
        raise ConfigInvalid([("irs.center", "an IRS position is required to compute link distances")])
    c = irs.pose.center
    d1 = distance(bs, c)
    if isinstance(device, Point3):
        d2 = distance(c, device)
    else:
        d2 = np.linalg.norm(np.asarray(device, dtype=float) - c.as_array(), axis=-1)
    theta_t, theta_r = irs.theta_t, irs.theta_r
    if theta_t is None or theta_r is None:
        derived_t, derived_r = incidence_angles(irs.pose, bs, device)
        theta_t = derived_t if theta_t is None else theta_t
        theta_r = derived_r if theta_r is None else theta_r
    return IrsLinkGeometry(d1=d1, d2=d2, theta_t=theta_t, theta_r=theta_r)


@dataclass(frozen=True)
class NoiseConfig:
    """``mode="thermal"`` uses k_B*T0*B*NF; ``mode="fixed"`` returns ``power``."""

    mode: str = "thermal"
    T0: float = 290.0
    noise_figure_db: float = 9.0
    power: Optional[float] = None

    def __post_init__(self):
        problems = []
        if self.mode == "thermal":
            if not self.T0 > 0:
                problems.append(("T0", "must be > 0"))
            if not math.isfinite(self.noise_figure_db):
                problems.append(("noise_figure", "must be finite"))
        elif self.mode == "fixed":
            if self.power is None or not self.power > 0:
                problems.append(("power", "fixed noise power must be > 0"))
        else:
            problems.append(("mode", f"must be 'thermal' or 'fixed', got {self.mode!r}"))
        _require(problems)


@dataclass(frozen=True)
class InterferenceConfig:
    """``geometric``: sum over non-serving micro BSs; ``fixed``: ``power`` W; ``none``: 0."""

    mode: str = "geometric"
    power: Optional[float] = None

    def __post_init__(self):
        problems = []
        if self.mode == "fixed":
            if self.power is None or not self.power >= 0:
                problems.append(("power", "fixed interference power must be >= 0"))
        elif self.mode not in ("geometric", "none"):
            problems.append(("mode", f"must be 'geometric', 'fixed' or 'none', got {self.mode!r}"))
        _require(problems)


def conventional_received_power(p_t, lam, h, d, params: PathLossParams):
    """Direct-link received power P_t * lam**k * h / ((4 pi)**2 * d**alpha)."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise DegenerateGeometry("link distance must be > 0")
    out = p_t * lam**params.lambda_exponent * np.asarray(h, dtype=float) / (FOUR_PI_SQ * d**params.alpha)
    return _scalar(out)


def scattering_gain(d_x, d_y, lam):
    """IRS scattering gain 4 pi d_x d_y / lam**2."""
    if not lam > 0:
        raise InvalidCarrier(f"wavelength must be > 0, got {lam}")
    return 4.0 * math.pi * d_x * d_y / lam**2


def irs_received_power(p_t, irs: IrsConfig, geom: IrsLinkGeometry, lam):
    """Received power over the BS -> IRS -> device cascade.

    No small-scale fading term enters this path.
    """
    d1 = np.asarray(geom.d1, dtype=float)
    d2 = np.asarray(geom.d2, dtype=float)
    if np.any(d1 <= 0) or np.any(d2 <= 0):
        raise DegenerateGeometry("IRS hop distances must be > 0")
    tt = np.asarray(geom.theta_t, dtype=float)
    tr = np.asarray(geom.theta_r, dtype=float)
    half_pi = math.pi / 2
    if np.any((tt < 0) | (tt >= half_pi)) or np.any((tr < 0) | (tr >= half_pi)):
        raise BehindSurface("IRS angles must lie in [0, pi/2)")
    g = scattering_gain(irs.d_x, irs.d_y, lam)
    num = (p_t * irs.G_t * irs.G_r * g * irs.M**2 * irs.N_elem**2
           * irs.d_x * irs.d_y * lam**2 * np.cos(tt) * np.cos(tr) * irs.A**2)
    return _scalar(num / (64.0 * math.pi**3 * (d1 * d2) ** 2))


def noise_power(bandwidth, cfg: NoiseConfig = NoiseConfig()):
    if not bandwidth > 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    if cfg.mode == "fixed":
        return cfg.power
    return BOLTZMANN * cfg.T0 * bandwidth * 10.0 ** (cfg.noise_figure_db / 10.0)


def interference_power(device: Point3, serving_index: int, all_bs, params: PathLossParams,
                       cfg: InterferenceConfig, stream: Optional[RngStream], lam: float,
                       fading: bool = True) -> float:
    """Downlink interference at ``device`` from every non-serving micro BS.

    ``all_bs`` is a sequence of ``(Point3, RadioConfig)``. Each interferer
    reaches the device over its direct path with its own fading draw, drawn
    from ``stream`` in list order. With ``fading=False`` every gain is 1 and
    ``stream`` may be None.
    """
    if not 0 <= serving_index < len(all_bs):
        raise IndexError(f"serving index {serving_index} out of range for {len(all_bs)} base stations")
    if cfg.mode == "none":
        return 0.0
    if cfg.mode == "fixed":
        return cfg.power
    total = 0.0
    for i, (pos, radio) in enumerate(all_bs):
        if i == serving_index:
            continue
        h = sample_fading(stream) if fading else 1.0
        total += conventional_received_power(radio.p_t_downlink, lam, h, distance(pos, device), params)
    return total
