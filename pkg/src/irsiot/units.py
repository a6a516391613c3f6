"""Unit handling at the I/O boundary.

Everything inside the package is linear SI (W, Hz, m, s, rad). Strings such
as ``"30 dBm"`` or ``"3 GHz"`` are only accepted by :func:`parse_quantity`.
"""
import math
import re

import numpy as np

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QUANTITY = re.compile(rf"^\s*({_NUMBER})\s*([A-Za-z/^0-9µ]*)\s*$")

# multiplier to SI for linear units, per dimension
_LINEAR = {
    "power": {"w": 1.0, "mw": 1e-3, "uw": 1e-6, "µw": 1e-6, "nw": 1e-9, "pw": 1e-12, "kw": 1e3},
    "frequency": {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12},
    "length": {"m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0},
    "gain": {"": 1.0},
    "density": {"/m^2": 1.0, "/m2": 1.0, "/km^2": 1e-6, "/km2": 1e-6},
    "temperature": {"k": 1.0},
    "bits": {"bit": 1.0, "bits": 1.0, "b": 1.0, "byte": 8.0, "bytes": 8.0, "kb": 1e3, "mb": 1e6},
}


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def dbm_to_watts(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(w):
    return 10.0 * np.log10(w) + 30.0


def parse_quantity(value, dimension):
    """Convert a config value to a float in SI units.

    Bare numbers are taken as already being SI. Strings carry a unit suffix:
    ``"30 dBm"``, ``"-3 dBW"``, ``"9 dB"``, ``"3 GHz"``, ``"5 mm"``,
    ``"60 deg"``, ``"1e-4 /km^2"``, ``"1500 bytes"``.

    Raises ``ValueError`` with a readable message on anything else.
    """
    if isinstance(value, bool):
        raise ValueError(f"expected a {dimension} quantity, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ValueError(f"expected a {dimension} quantity, got {type(value).__name__}")
    m = _QUANTITY.match(value)
    if not m:
        raise ValueError(f"cannot parse {value!r} as a {dimension} quantity")
    number = float(m.group(1))
    unit = m.group(2).lower()
    if dimension == "power":
        if unit == "dbm":
            return dbm_to_watts(number)
        if unit == "dbw":
            return 10.0 ** (number / 10.0)
    if dimension == "gain" and unit in ("db", "dbi"):
        return 10.0 ** (number / 10.0)
    if dimension == "noise_figure":
        if unit in ("", "db"):
            return number
        raise ValueError(f"noise figure must be in dB, got {value!r}")
    table = _LINEAR.get(dimension)
    if table is None:
        raise ValueError(f"unknown dimension {dimension!r}")
    if unit not in table:
        raise ValueError(f"unit {m.group(2)!r} is not a {dimension} unit")
    return number * table[unit]
