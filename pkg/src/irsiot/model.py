"""Scenario description and vectorised evaluation of link powers.

A replication draws two uniforms (device placement) and ``fading_width``
exponential gains laid out as ``[h_dl, h_ul, h_macro, h_interferer_1, ...]``.
Both modes consume the same draws, which gives common random numbers when
conventional and IRS runs share a seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .association import TierConfig
from .channel import (IrsConfig, InterferenceConfig, NoiseConfig, PathLossParams, RadioConfig,
                      conventional_received_power, irs_link_geometry, irs_received_power, noise_power)
from .core import CarrierConfig, Point3, RngStream
from .errors import ConfigInvalid
from .metrics import Payload

MODES = ("conventional", "irs")


@dataclass(frozen=True)
class MacroConfig:
    position: Point3
    p_t: float  # W

    def __post_init__(self):
        object.__setattr__(self, "position", Point3.of(self.position))
        if not self.p_t > 0:
            raise ConfigInvalid([("p_t", "must be > 0")])


@dataclass(frozen=True)
class DevicePlacement:
    """``fixed``: replication r uses ``positions[r % len(positions)]``.
    ``disc``: uniform in a disc of ``radius`` around the serving micro BS,
    at ``height``. ``height`` is ignored for fixed placement."""

    kind: str = "fixed"
    positions: tuple = ()
    radius: float = 0.0
    height: float = 1.5

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(Point3.of(p) for p in self.positions))
        problems = []
        if self.kind == "fixed":
            if not self.positions:
                problems.append(("positions", "at least one device position is required"))
        elif self.kind == "disc":
            if not self.radius >= 0:
                problems.append(("radius", "must be >= 0"))
            if not math.isfinite(self.height):
                problems.append(("height", "must be finite"))
        else:
            problems.append(("placement", f"must be 'fixed' or 'disc', got {self.kind!r}"))
        if problems:
            raise ConfigInvalid(problems)


@dataclass(frozen=True)
class ScenarioConfig:
    carrier: CarrierConfig
    radio: RadioConfig
    macro: MacroConfig
    micro_positions: tuple
    tiers: TierConfig
    device: DevicePlacement
    micro_pathloss: PathLossParams = PathLossParams(alpha=3.0)
    serving: int = 0
    irs: Optional[IrsConfig] = None
    noise: NoiseConfig = NoiseConfig()
    interference_dl: InterferenceConfig = InterferenceConfig("geometric")
    interference_ul: InterferenceConfig = InterferenceConfig("none")
    payload: Payload = field(default_factory=Payload)
    mode: str = "conventional"
    fading: bool = True

    def __post_init__(self):
        object.__setattr__(self, "micro_positions", tuple(Point3.of(p) for p in self.micro_positions))
        problems = []
        if not self.micro_positions:
            problems.append(("micro.positions", "at least one micro BS is required"))
        elif not 0 <= self.serving < len(self.micro_positions):
            problems.append(("micro.serving", f"index {self.serving} out of range"))
        if self.mode not in MODES:
            problems.append(("mode", f"must be one of {MODES}, got {self.mode!r}"))
        if self.mode == "irs" and self.irs is None:
            problems.append(("irs", "mode 'irs' requires an [irs] section"))
        if self.irs is not None and self.irs.pose is None:
            problems.append(("irs.center", "an IRS position is required"))
        if self.interference_ul.mode == "geometric":
            problems.append(("interference.uplink.mode", "uplink interference must be 'none' or 'fixed'"))
        if problems:
            raise ConfigInvalid(problems)

    @property
    def device_height(self) -> float:
        """Height of region-averaging discs: the disc height, or the first fixed device's z."""
        if self.device.kind == "disc":
            return self.device.height
        return self.device.positions[0].z

    @property
    def serving_position(self) -> Point3:
        return self.micro_positions[self.serving]

    @property
    def interferer_positions(self) -> list:
        return [p for i, p in enumerate(self.micro_positions) if i != self.serving]

    @property
    def fading_width(self) -> int:
        return 3 + len(self.micro_positions) - 1

    @property
    def macro_pathloss(self) -> PathLossParams:
        return PathLossParams(self.tiers.alpha_mac, self.micro_pathloss.lambda_exponent)


def draw_block(cfg: ScenarioConfig, seed: int, start: int, stop: int):
    """Random inputs for replications ``start..stop-1``, one stream each."""
    n = stop - start
    u = np.empty((n, 2))
    h = np.empty((n, cfg.fading_width))
    for i, r in enumerate(range(start, stop)):
        gen = RngStream(seed, r).generator
        u[i] = gen.random(2)
        h[i] = gen.standard_exponential(cfg.fading_width)
    return u, h


def disc_positions(cfg: ScenarioConfig, u: np.ndarray, radius: float) -> np.ndarray:
    c = cfg.serving_position
    r = radius * np.sqrt(u[:, 0])
    phi = 2.0 * np.pi * u[:, 1]
    return np.column_stack([c.x + r * np.cos(phi), c.y + r * np.sin(phi),
                            np.full(len(u), cfg.device_height)])


def device_positions(cfg: ScenarioConfig, rep_index: np.ndarray, u: np.ndarray) -> np.ndarray:
    if cfg.device.kind == "disc":
        return disc_positions(cfg, u, cfg.device.radius)
    table = np.array([p.as_array() for p in cfg.device.positions])
    return table[rep_index % len(table)]


def _distances(points: np.ndarray, origin: Point3) -> np.ndarray:
    return np.linalg.norm(points - origin.as_array(), axis=-1)


def link_powers(cfg: ScenarioConfig, mode: str, pos: np.ndarray, fades: np.ndarray,
                interference: bool = True) -> dict:
    """Serving, macro, interference and noise powers for each row of ``pos``."""
    lam = cfg.carrier.wavelength
    h = fades if cfg.fading else np.ones_like(fades)
    bs = cfg.serving_position
    radio = cfg.radio
    out = {}
    if mode == "conventional":
        d = _distances(pos, bs)
        out["rx_power_dl"] = conventional_received_power(radio.p_t_downlink, lam, h[:, 0], d, cfg.micro_pathloss)
        out["rx_power_ul"] = conventional_received_power(radio.p_t_uplink, lam, h[:, 1], d, cfg.micro_pathloss)
    elif mode == "irs":
        if cfg.irs is None:
            raise ConfigInvalid([("irs", "IRS mode requires an [irs] section")])
        # the reverse cascade has the same distances and swapped angles; the kernel is symmetric
        geom = irs_link_geometry(cfg.irs, bs, pos)
        ones = np.ones(len(pos))
        out["rx_power_dl"] = irs_received_power(radio.p_t_downlink, cfg.irs, geom, lam) * ones
        out["rx_power_ul"] = irs_received_power(radio.p_t_uplink, cfg.irs, geom, lam) * ones
    else:
        raise ConfigInvalid([("mode", f"unknown mode {mode!r}")])

    d_mac = _distances(pos, cfg.macro.position)
    out["macro"] = conventional_received_power(cfg.macro.p_t, lam, h[:, 2], d_mac, cfg.macro_pathloss)

    if not interference:
        return out
    n = len(pos)
    idl = cfg.interference_dl
    if idl.mode == "geometric":
        total = np.zeros(n)
        for k, p in enumerate(cfg.interferer_positions):
            total = total + conventional_received_power(radio.p_t_downlink, lam, h[:, 3 + k],
                                                        _distances(pos, p), cfg.micro_pathloss)
        out["interference_dl"] = total
    elif idl.mode == "fixed":
        out["interference_dl"] = np.full(n, idl.power)
    else:
        out["interference_dl"] = np.zeros(n)
    iul = cfg.interference_ul
    out["interference_ul"] = np.full(n, iul.power if iul.mode == "fixed" else 0.0)
    out["noise_dl"] = noise_power(radio.b_downlink, cfg.noise)
    out["noise_ul"] = noise_power(radio.b_uplink, cfg.noise)
    return out
