"""Link-quality metrics: SINR, Shannon throughput, spectral efficiency, delay.

The same kernels serve the conventional and the IRS-assisted links; only the
received power fed in differs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidBandwidth, InvalidNoise, ZeroThroughput

DEFAULT_PAYLOAD_BITS = 12_000  # one 1500-byte frame


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class Payload:
    bits: int = DEFAULT_PAYLOAD_BITS

    def __post_init__(self):
        if not (float(self.bits).is_integer() and self.bits > 0):
            raise ValueError(f"payload must be a positive integer number of bits, got {self.bits}")
        object.__setattr__(self, "bits", int(self.bits))


@dataclass(frozen=True)
class LinkMetrics:
    received_power: float
    sinr: float
    throughput: float
    spectral_efficiency: float
    delay: Optional[float] = None


def sinr(p_r, interference, noise):
    if np.any(np.asarray(noise) <= 0):
        raise InvalidNoise(f"noise power must be > 0, got {noise}")
    return _scalar(np.asarray(p_r, dtype=float) / (interference + noise))


def throughput(bandwidth, s):
    """Shannon rate B*log2(1+s) in bit/s."""
    if not bandwidth > 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    return _scalar(bandwidth * np.log2(1.0 + np.asarray(s, dtype=float)))


def spectral_efficiency(t, bandwidth):
    if not bandwidth > 0:
        raise InvalidBandwidth(f"bandwidth must be > 0, got {bandwidth}")
    return _scalar(np.asarray(t, dtype=float) / bandwidth)


def transmission_delay(payload: Payload | int, t):
    """Time to push ``payload`` bits at rate ``t``.

    Raises :class:`ZeroThroughput` for a dead link (t <= 0).
    """
    bits = payload.bits if isinstance(payload, Payload) else payload
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ZeroThroughput("throughput is zero; the link cannot deliver the payload")
    return _scalar(bits / t)


def link_metrics(p_r, interference, noise, bandwidth, payload: Optional[Payload] = None) -> LinkMetrics:
    s = sinr(p_r, interference, noise)
    t = throughput(bandwidth, s)
    se = spectral_efficiency(t, bandwidth)
    delay = transmission_delay(payload, t) if payload is not None else None
    return LinkMetrics(received_power=float(p_r), sinr=s, throughput=t,
                       spectral_efficiency=se, delay=delay)
