"""Monte Carlo engine, conventional-vs-IRS comparison and parameter sweeps."""
from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .association import Z95, _association, average_device_count, device_count_slope
from .core import Point3
from .errors import ConfigInvalid, UnknownParameter
from .metrics import spectral_efficiency, throughput
from .model import MODES, DevicePlacement, ScenarioConfig, device_positions, draw_block, link_powers

# metric name -> unit, in output order
METRICS = {
    "rx_power_dl": "W",
    "rx_power_ul": "W",
    "sinr_dl": "1",
    "sinr_ul": "1",
    "throughput_dl": "bps",
    "throughput_ul": "bps",
    "se_dl": "bps/Hz",
    "se_ul": "bps/Hz",
    "delay_ul": "s",
    "association": "1",
    "served_devices": "1",
}

_BLOCK = 4096


@dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float
    ci95: float
    n: int

    @classmethod
    def of(cls, x: np.ndarray) -> "MetricStats":
        n = len(x)
        with np.errstate(invalid="ignore"):
            mean = float(np.mean(x))
            std = float(np.std(x, ddof=1)) if n > 1 else 0.0
        return cls(mean, std, Z95 * std / math.sqrt(n), n)


@dataclass
class MetricsSummary:
    mode: str
    seed: int
    replications: int
    metrics: dict = field(default_factory=dict)

    def __getitem__(self, name) -> MetricStats:
        return self.metrics[name]

    def means(self) -> dict:
        return {k: v.mean for k, v in self.metrics.items()}


@dataclass
class ComparisonReport:
    conventional: MetricsSummary
    irs: MetricsSummary
    deltas: dict
    ratios: dict


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple
    replications: int = 1000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        problems = []
        if not self.values:
            problems.append(("values", "at least one value is required"))
        if self.replications < 1:
            problems.append(("replications", "must be >= 1"))
        if problems:
            raise ConfigInvalid(problems)


@dataclass
class SweepTable:
    parameter: str
    values: list
    summaries: list

    def column(self, metric: str, stat: str = "mean") -> np.ndarray:
        return np.array([getattr(s[metric], stat) for s in self.summaries])


def _draws(cfg: ScenarioConfig, replications: int, seed: int, workers: int):
    bounds = [(a, min(a + _BLOCK, replications)) for a in range(0, replications, _BLOCK)]
    if workers <= 1 or len(bounds) == 1:
        blocks = [draw_block(cfg, seed, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda ab: draw_block(cfg, seed, *ab), bounds))
    u = np.concatenate([b[0] for b in blocks])
    h = np.concatenate([b[1] for b in blocks])
    return u, h


def _evaluate(cfg: ScenarioConfig, mode: str, u, h) -> dict:
    """Per-replication metric arrays for one mode."""
    reps = np.arange(len(u))
    pos = device_positions(cfg, reps, u)
    p = link_powers(cfg, mode, pos, h)
    radio = cfg.radio
    out = {"rx_power_dl": p["rx_power_dl"], "rx_power_ul": p["rx_power_ul"]}
    out["sinr_dl"] = p["rx_power_dl"] / (p["interference_dl"] + p["noise_dl"])
    out["sinr_ul"] = p["rx_power_ul"] / (p["interference_ul"] + p["noise_ul"])
    out["throughput_dl"] = throughput(radio.b_downlink, out["sinr_dl"])
    out["throughput_ul"] = throughput(radio.b_uplink, out["sinr_ul"])
    out["se_dl"] = spectral_efficiency(out["throughput_dl"], radio.b_downlink)
    out["se_ul"] = spectral_efficiency(out["throughput_ul"], radio.b_uplink)
    # a dead uplink has unbounded delay; serialisation refuses it later
    with np.errstate(divide="ignore"):
        out["delay_ul"] = cfg.payload.bits / out["throughput_ul"]
    out["association"] = _association(cfg.tiers, p["macro"], p["rx_power_dl"])
    return out


def _summarise(cfg, mode, seed, arrays) -> MetricsSummary:
    summary = MetricsSummary(mode=mode, seed=seed, replications=len(arrays["association"]))
    for name in METRICS:
        if name == "served_devices":
            continue
        summary.metrics[name] = MetricStats.of(arrays[name])
    a = summary.metrics["association"]
    slope = device_count_slope(cfg.tiers)
    summary.metrics["served_devices"] = MetricStats(
        average_device_count(cfg.tiers, min(max(a.mean, 0.0), 1.0)), slope * a.std, slope * a.ci95, a.n)
    return summary


def run_scenario(cfg: ScenarioConfig, replications: int, seed: int, workers: int = 1,
                 mode: str | None = None) -> MetricsSummary:
    """Run ``replications`` independent draws of ``cfg`` and aggregate every metric.

    Replication r uses stream ``(seed, r)``; the result is identical for any
    ``workers`` count. ``mode`` overrides ``cfg.mode``.
    """
    if replications < 1:
        raise ConfigInvalid([("replications", "must be >= 1")])
    mode = mode or cfg.mode
    if mode not in MODES:
        raise ConfigInvalid([("mode", f"must be one of {MODES}")])
    u, h = _draws(cfg, replications, seed, workers)
    return _summarise(cfg, mode, seed, _evaluate(cfg, mode, u, h))


def compare_scenarios(cfg: ScenarioConfig, replications: int, seed: int,
                      workers: int = 1) -> ComparisonReport:
    """Run both modes on the same geometry and random draws."""
    if cfg.irs is None:
        raise ConfigInvalid([("irs", "comparison requires an [irs] section")])
    if replications < 1:
        raise ConfigInvalid([("replications", "must be >= 1")])
    u, h = _draws(cfg, replications, seed, workers)
    conv = _summarise(cfg, "conventional", seed, _evaluate(cfg, "conventional", u, h))
    irs = _summarise(cfg, "irs", seed, _evaluate(cfg, "irs", u, h))
    deltas, ratios = {}, {}
    for name in METRICS:
        c, i = conv[name].mean, irs[name].mean
        deltas[name] = i - c
        ratios[name] = i / c if c != 0 else None
    return ComparisonReport(conv, irs, deltas, ratios)


def _coerce(current, value):
    if isinstance(current, bool):
        return bool(value)
    if isinstance(current, int):
        if not float(value).is_integer():
            raise ValueError(f"expected an integer, got {value}")
        return int(value)
    return float(value)


def with_parameter(cfg: ScenarioConfig, path: str, value) -> ScenarioConfig:
    """Return a copy of ``cfg`` with the dotted attribute ``path`` set to ``value``.

    Besides plain attribute paths (``irs.M``, ``carrier.f_c``,
    ``radio.p_t_downlink``, ``tiers.lambda_u`` ...) two shortcuts exist:
    ``device.distance`` places a single device that far from the serving BS
    along +x at the BS height, and ``irs.distance`` does the same for the
    device relative to the IRS centre along its normal.
    """
    if path == "device.distance":
        bs = cfg.serving_position
        dev = DevicePlacement("fixed", (Point3(bs.x + float(value), bs.y, bs.z),))
        return dataclasses.replace(cfg, device=dev)
    if path == "irs.distance":
        if cfg.irs is None or cfg.irs.pose is None:
            raise UnknownParameter(path)
        c, n = cfg.irs.pose.center.as_array(), np.asarray(cfg.irs.pose.normal)
        dev = DevicePlacement("fixed", (Point3(*(c + float(value) * n)),))
        return dataclasses.replace(cfg, device=dev)

    head, _, rest = path.partition(".")
    if not head or not dataclasses.is_dataclass(cfg) or head not in {f.name for f in dataclasses.fields(cfg)}:
        raise UnknownParameter(path)
    current = getattr(cfg, head)
    if rest:
        if current is None or not dataclasses.is_dataclass(current):
            raise UnknownParameter(path)
        try:
            new = with_parameter(current, rest, value)
        except UnknownParameter:
            raise UnknownParameter(path) from None
    else:
        if dataclasses.is_dataclass(current) or isinstance(current, tuple):
            raise UnknownParameter(path)
        new = _coerce(current, value) if current is not None else float(value)
    return dataclasses.replace(cfg, **{head: new})


def sweep(cfg: ScenarioConfig, spec: SweepSpec, workers: int = 1) -> SweepTable:
    """One summary per value of ``spec.parameter``, all points seeded identically."""
    points = [with_parameter(cfg, spec.parameter, v) for v in spec.values]
    summaries = [run_scenario(p, spec.replications, spec.seed, workers) for p in points]
    return SweepTable(spec.parameter, list(spec.values), summaries)


def associate(cfg: ScenarioConfig, region_radius: float | None, n_samples: int, seed: int,
              mode: str | None = None, order: str = "after"):
    """Association summary for one mode.

    ``A`` is the pointwise probability at a reference device with unit
    fading gains: the first fixed device position, or for disc placement
    the point half a radius from the serving BS along +x. ``region_radius``
    defaults to the disc radius, or to the horizontal distance between the
    serving BS and the first fixed device.
    """
    from .association import AssociationResult, mean_association_probability
    from .core import RngStream

    mode = mode or cfg.mode
    cfg = dataclasses.replace(cfg, mode=mode)
    bs = cfg.serving_position
    if cfg.device.kind == "fixed":
        ref = cfg.device.positions[0]
        default_radius = math.hypot(ref.x - bs.x, ref.y - bs.y)
    else:
        default_radius = cfg.device.radius
        ref = Point3(bs.x + default_radius / 2, bs.y, cfg.device.height)
    radius = default_radius if region_radius is None else region_radius
    p = link_powers(cfg, mode, ref.as_array()[None, :], np.ones((1, cfg.fading_width)),
                    interference=False)
    a_point = float(_association(cfg.tiers, p["macro"], p["rx_power_dl"])[0])
    a_bar, ci = mean_association_probability(cfg, radius, n_samples, RngStream(seed, 0), order=order)
    return AssociationResult(A=a_point, A_bar=a_bar, ci_halfwidth=ci,
                             n_devices=average_device_count(cfg.tiers, min(max(a_bar, 0.0), 1.0)))
