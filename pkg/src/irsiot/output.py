"""CSV tables, JSON summaries and run manifests."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

from .errors import NonFiniteOutput
from .scenario import METRICS, ComparisonReport, MetricsSummary, SweepTable

# units for sweepable parameters; anything else is written as "-"
PARAMETER_UNITS = {
    "irs.M": "count", "irs.N_elem": "count", "irs.A": "1", "irs.d_x": "m", "irs.d_y": "m",
    "irs.G_t": "1", "irs.G_r": "1", "irs.theta_t": "rad", "irs.theta_r": "rad", "irs.distance": "m",
    "device.distance": "m", "device.radius": "m", "device.height": "m",
    "carrier.f_c": "Hz", "radio.p_t_downlink": "W", "radio.p_t_uplink": "W",
    "radio.b_downlink": "Hz", "radio.b_uplink": "Hz", "macro.p_t": "W",
    "micro_pathloss.alpha": "1", "tiers.lambda_mac": "1/m^2", "tiers.lambda_mic": "1/m^2",
    "tiers.lambda_u": "1/m^2", "tiers.alpha_mac": "1", "payload.bits": "bit",
}


@dataclass
class OutputTable:
    columns: list  # (name, unit) pairs
    rows: list = field(default_factory=list)

    def add_row(self, values):
        values = [float(v) for v in values]
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        for (name, _), v in zip(self.columns, values):
            if not math.isfinite(v):
                raise NonFiniteOutput(f"column {name!r} would contain {v}")
        self.rows.append(values)

    @property
    def header(self) -> list:
        return [f"{name} [{unit}]" for name, unit in self.columns]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(repr(v) for v in row) + "\n")
        return buf.getvalue()

    def to_records(self) -> list:
        return [dict(zip(self.header, row)) for row in self.rows]


def _stat_columns(prefix=""):
    cols = []
    for name, unit in METRICS.items():
        cols += [(f"{prefix}{name}", unit), (f"{prefix}{name}_std", unit), (f"{prefix}{name}_ci95", unit)]
    return cols


def _stat_values(summary: MetricsSummary):
    out = []
    for name in METRICS:
        s = summary[name]
        out += [s.mean, s.std, s.ci95]
    return out


def summary_table(summary: MetricsSummary) -> OutputTable:
    table = OutputTable(_stat_columns() + [("replications", "count")])
    table.add_row(_stat_values(summary) + [summary.replications])
    return table


def comparison_table(report: ComparisonReport) -> OutputTable:
    cols, row = [], []
    for name, unit in METRICS.items():
        c, i = report.conventional[name], report.irs[name]
        cols += [(f"conv_{name}", unit), (f"conv_{name}_ci95", unit),
                 (f"irs_{name}", unit), (f"irs_{name}_ci95", unit), (f"delta_{name}", unit)]
        row += [c.mean, c.ci95, i.mean, i.ci95, report.deltas[name]]
    table = OutputTable(cols + [("replications", "count")])
    table.add_row(row + [report.conventional.replications])
    return table


def sweep_table(sweep: SweepTable) -> OutputTable:
    table = OutputTable([(sweep.parameter, PARAMETER_UNITS.get(sweep.parameter, "-"))] + _stat_columns())
    for value, summary in zip(sweep.values, sweep.summaries):
        table.add_row([value] + _stat_values(summary))
    return table


def association_table(results: dict, radius: float, samples: int) -> OutputTable:
    """``results`` maps mode name to :class:`AssociationResult`, in output order."""
    cols, row = [], []
    for mode, res in results.items():
        p = "conv" if mode == "conventional" else mode
        cols += [(f"{p}_association", "1"), (f"{p}_association_avg", "1"),
                 (f"{p}_association_avg_ci95", "1"), (f"{p}_served_devices", "1")]
        row += [res.A, res.A_bar, res.ci_halfwidth, res.n_devices]
    table = OutputTable(cols + [("region_radius", "m"), ("samples", "count")])
    table.add_row(row + [radius, samples])
    return table


def _check_finite(obj, path="$"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise NonFiniteOutput(f"{path} would contain {obj}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


def summary_dict(summary: MetricsSummary) -> dict:
    return {
        "mode": summary.mode,
        "seed": summary.seed,
        "replications": summary.replications,
        "metrics": {name: {"unit": unit, "mean": summary[name].mean, "std": summary[name].std,
                           "ci95": summary[name].ci95, "n": summary[name].n}
                    for name, unit in METRICS.items()},
    }


def comparison_dict(report: ComparisonReport) -> dict:
    return {
        "conventional": summary_dict(report.conventional),
        "irs": summary_dict(report.irs),
        "delta": {k: v for k, v in report.deltas.items()},
        "ratio": {k: v for k, v in report.ratios.items()},
    }


def sweep_dict(sweep: SweepTable) -> dict:
    return {
        "parameter": sweep.parameter,
        "points": [{"value": v, **summary_dict(s)} for v, s in zip(sweep.values, sweep.summaries)],
    }


def dumps_json(obj) -> str:
    _check_finite(obj)
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"
