"""Geometry, carrier handling, fading and reproducible random streams."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BehindSurface, DegenerateGeometry, InvalidCarrier

SPEED_OF_LIGHT = 299_792_458.0  # m/s

_U64 = 2**64


@dataclass(frozen=True)
class Point3:
    """Cartesian position in meters."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DegenerateGeometry(f"coordinate {name}={v} is not finite")
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @classmethod
    def of(cls, xyz) -> "Point3":
        if isinstance(xyz, Point3):
            return xyz
        return cls(*xyz)


def distance(a: Point3, b: Point3) -> float:
    return math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))


@dataclass(frozen=True)
class CarrierConfig:
    f_c: float  # Hz

    def __post_init__(self):
        if not (self.f_c > 0 and math.isfinite(self.f_c)):
            raise InvalidCarrier(f"carrier frequency must be positive, got {self.f_c}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.f_c


def wavelength(cfg: CarrierConfig | float) -> float:
    """Carrier wavelength c/f_c in meters."""
    f_c = cfg.f_c if isinstance(cfg, CarrierConfig) else cfg
    if not f_c > 0:
        raise InvalidCarrier(f"carrier frequency must be positive, got {f_c}")
    return SPEED_OF_LIGHT / f_c


@dataclass
class RngStream:
    """One independent random stream, addressed by ``(seed, stream_id)``.

    Backed by numpy's Philox4x64-10 counter-based generator. The seed is the
    Philox key and the stream id occupies the most significant word of the
    256-bit counter, so distinct ids never overlap in practice (each stream
    has 2**192 blocks before reaching its neighbour). A stream is not meant
    to be shared between threads.
    """

    seed: int
    stream_id: int = 0
    _gen: np.random.Generator | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not (isinstance(v, (int, np.integer)) and 0 <= v < _U64):
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            bitgen = np.random.Philox(key=int(self.seed), counter=[0, 0, 0, int(self.stream_id)])
            self._gen = np.random.Generator(bitgen)
        return self._gen


def sample_fading(stream: RngStream, size=None):
    """Draw Rayleigh power gain(s) h ~ Exp(1).

    Returns a float when ``size`` is None, else an array of that shape.
    """
    h = stream.generator.standard_exponential(size)
    return float(h) if size is None else h


@dataclass(frozen=True)
class IrsPose:
    """IRS panel centre and outward unit normal.

    Any non-zero ``normal`` is accepted; one that is not already unit length
    (to 1e-12) is normalised on construction.
    """

    center: Point3
    normal: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "center", Point3.of(self.center))
        n = np.asarray(self.normal, dtype=float)
        if n.shape != (3,) or not np.all(np.isfinite(n)):
            raise DegenerateGeometry(f"IRS normal must be a finite 3-vector, got {self.normal!r}")
        norm = np.linalg.norm(n)
        if norm == 0:
            raise DegenerateGeometry("IRS normal has zero length")
        if abs(norm - 1.0) > 1e-12:
            n = n / norm
        object.__setattr__(self, "normal", tuple(float(v) for v in n))


def _angle_from_normal(normal: np.ndarray, offset: np.ndarray) -> np.ndarray:
    r = np.linalg.norm(offset, axis=-1)
    if np.any(r == 0):
        raise DegenerateGeometry("node coincides with the IRS centre")
    cos = (offset @ normal) / r
    if np.any(cos <= 0):
        raise BehindSurface("node is on or behind the IRS plane")
    # arccos loses accuracy near 0; arctan2 of the perpendicular part does not
    perp = np.linalg.norm(np.cross(offset, normal), axis=-1)
    return np.arctan2(perp, offset @ normal)


def incidence_angles(pose: IrsPose, tx, rx):
    """Angles (theta_t, theta_r) between the IRS normal and the directions to tx and rx.

    ``tx`` and ``rx`` may be :class:`Point3` or ``(..., 3)`` arrays; arrays
    give array results.
    """
    c = pose.center.as_array()
    n = np.asarray(pose.normal)
    out = []
    for node in (tx, rx):
        p = node.as_array() if isinstance(node, Point3) else np.asarray(node, dtype=float)
        theta = _angle_from_normal(n, p - c)
        out.append(float(theta) if np.ndim(theta) == 0 else theta)
    return tuple(out)
