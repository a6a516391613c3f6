"""TOML scenario files: parsing with unit normalisation, validation and serialisation.

Quantities may be written with units (``p_t_downlink = "30 dBm"``,
``f_c = "3 GHz"``); everything is converted to linear SI on load.
:func:`dumps_config` writes plain SI numbers, so
``loads_config(dumps_config(cfg)) == cfg``.
"""
from __future__ import annotations

import hashlib
from pathlib import Path

import tomli
import tomli_w

from .association import TierConfig
from .channel import InterferenceConfig, IrsConfig, NoiseConfig, PathLossParams, RadioConfig
from .core import CarrierConfig, IrsPose
from .errors import ConfigInvalid
from .metrics import DEFAULT_PAYLOAD_BITS, Payload
from .model import DevicePlacement, MacroConfig, ScenarioConfig

_SECTIONS = {"mode", "fading", "payload", "carrier", "radio", "macro", "micro", "device",
             "irs", "noise", "interference", "tiers"}


class _Reader:
    """Pulls typed values out of a nested dict, collecting problems by key path."""

    def __init__(self):
        self.issues = []

    def section(self, doc, name, required=True):
        value = doc.get(name)
        if value is None:
            if required:
                self.issues.append((name, "section is missing"))
            return None
        if not isinstance(value, dict):
            self.issues.append((name, "must be a table"))
            return None
        return value

    def get(self, table, path, key, dimension, default=..., required=True):
        from .units import parse_quantity

        if key not in table:
            if default is not ...:
                return default
            if required:
                self.issues.append((f"{path}.{key}", "is required"))
            return None
        try:
            return parse_quantity(table[key], dimension)
        except ValueError as exc:
            self.issues.append((f"{path}.{key}", str(exc)))
            return None

    def point(self, value, path):
        if (isinstance(value, (list, tuple)) and len(value) == 3
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
            return tuple(float(v) for v in value)
        self.issues.append((path, "must be a list of three numbers [x, y, z] in meters"))
        return None

    def build(self, path, factory, *args, **kwargs):
        if any(a is None for a in args) or any(v is None for k, v in kwargs.items() if k not in _OPTIONAL):
            return None
        try:
            return factory(*args, **kwargs)
        except ConfigInvalid as exc:
            self.issues.extend(exc.prefixed(path).issues if path else exc.issues)
        except ValueError as exc:
            self.issues.append((path, str(exc)))
        return None


_OPTIONAL = {"pose", "theta_t", "theta_r", "power", "irs"}


def _interference(r, table, path, default_mode):
    if table is None:
        return InterferenceConfig(default_mode)
    if isinstance(table, str):
        table = {"mode": table}
    if not isinstance(table, dict):
        r.issues.append((path, "must be a mode string or a table"))
        return None
    mode = table.get("mode", default_mode)
    power = r.get(table, path, "power", "power", default=None)
    return r.build(path, InterferenceConfig, mode, power=power)


def config_from_dict(doc: dict) -> ScenarioConfig:
    """Validate a parsed document; raises :class:`ConfigInvalid` listing every problem."""
    r = _Reader()
    for key in doc:
        if key not in _SECTIONS:
            r.issues.append((key, "unknown key"))

    carrier = r.section(doc, "carrier")
    carrier_cfg = None
    if carrier is not None:
        carrier_cfg = r.build("carrier.f_c", CarrierConfig, r.get(carrier, "carrier", "f_c", "frequency"))

    radio_cfg = None
    radio = r.section(doc, "radio")
    if radio is not None:
        radio_cfg = r.build("radio", RadioConfig,
                            r.get(radio, "radio", "p_t_downlink", "power"),
                            r.get(radio, "radio", "p_t_uplink", "power"),
                            r.get(radio, "radio", "b_downlink", "frequency"),
                            r.get(radio, "radio", "b_uplink", "frequency"))

    macro_cfg = None
    macro = r.section(doc, "macro")
    if macro is not None:
        pos = r.point(macro.get("position"), "macro.position")
        macro_cfg = r.build("macro", MacroConfig, pos, r.get(macro, "macro", "p_t", "power"))

    micro_positions, pathloss, serving = None, None, 0
    micro = r.section(doc, "micro")
    if micro is not None:
        raw = micro.get("positions")
        if not isinstance(raw, list) or not raw:
            r.issues.append(("micro.positions", "must be a non-empty list of [x, y, z] points"))
        else:
            pts = [r.point(p, f"micro.positions[{i}]") for i, p in enumerate(raw)]
            micro_positions = None if any(p is None for p in pts) else tuple(pts)
        serving = micro.get("serving", 0)
        if not isinstance(serving, int) or isinstance(serving, bool):
            r.issues.append(("micro.serving", "must be an integer index"))
            serving = 0
        lam_exp = micro.get("lambda_exponent", 1)
        pathloss = r.build("micro", PathLossParams, r.get(micro, "micro", "alpha", "gain"), lam_exp)

    device_cfg = None
    device = r.section(doc, "device")
    if device is not None:
        kind = device.get("placement", "fixed")
        if kind == "fixed":
            raw = device.get("positions")
            if not isinstance(raw, list) or not raw:
                r.issues.append(("device.positions", "must be a non-empty list of [x, y, z] points"))
            else:
                pts = [r.point(p, f"device.positions[{i}]") for i, p in enumerate(raw)]
                if all(p is not None for p in pts):
                    device_cfg = r.build("device", DevicePlacement, "fixed", tuple(pts))
        else:
            radius = r.get(device, "device", "radius", "length")
            height = r.get(device, "device", "height", "length", default=1.5)
            device_cfg = r.build("device", DevicePlacement, kind, (), radius=radius, height=height)

    irs_cfg = None
    irs = r.section(doc, "irs", required=False)
    if irs is not None:
        pose = None
        if "center" in irs:
            center = r.point(irs["center"], "irs.center")
            normal = irs.get("normal", [0.0, 0.0, 1.0])
            if center is not None:
                pose = r.build("irs", IrsPose, center, tuple(normal) if isinstance(normal, list) else normal)
        theta_t = r.get(irs, "irs", "theta_t", "angle", default=None)
        theta_r = r.get(irs, "irs", "theta_r", "angle", default=None)
        irs_cfg = r.build(
            "irs", IrsConfig,
            irs.get("M"), irs.get("N"),
            r.get(irs, "irs", "d_x", "length"), r.get(irs, "irs", "d_y", "length"),
            r.get(irs, "irs", "A", "gain", default=1.0),
            r.get(irs, "irs", "G_t", "gain", default=1.0),
            r.get(irs, "irs", "G_r", "gain", default=1.0),
            pose=pose, theta_t=theta_t, theta_r=theta_r)
        for key in ("M", "N"):
            if key not in irs:
                r.issues.append((f"irs.{key}", "is required"))
    noise_cfg = NoiseConfig()
    noise = r.section(doc, "noise", required=False)
    if noise is not None:
        noise_cfg = r.build("noise", NoiseConfig, noise.get("mode", "thermal"),
                            r.get(noise, "noise", "T0", "temperature", default=290.0),
                            r.get(noise, "noise", "noise_figure", "noise_figure", default=9.0),
                            power=r.get(noise, "noise", "power", "power", default=None))

    interference = r.section(doc, "interference", required=False) or {}
    idl = _interference(r, interference.get("downlink"), "interference.downlink", "geometric")
    iul = _interference(r, interference.get("uplink"), "interference.uplink", "none")

    tiers_cfg = None
    tiers = r.section(doc, "tiers")
    if tiers is not None:
        tiers_cfg = r.build("tiers", TierConfig,
                            r.get(tiers, "tiers", "lambda_mac", "density"),
                            r.get(tiers, "tiers", "lambda_mic", "density"),
                            r.get(tiers, "tiers", "lambda_u", "density", default=0.0),
                            r.get(tiers, "tiers", "alpha_mac", "gain"))

    payload_cfg = r.build("payload", Payload, r.get(doc, "", "payload", "bits", default=DEFAULT_PAYLOAD_BITS))
    mode = doc.get("mode", "conventional")
    fading = doc.get("fading", True)
    if not isinstance(fading, bool):
        r.issues.append(("fading", "must be true or false"))
        fading = True

    if r.issues:
        raise ConfigInvalid(r.issues)
    cfg = r.build("", ScenarioConfig, carrier_cfg, radio_cfg, macro_cfg, micro_positions, tiers_cfg,
                  device_cfg, micro_pathloss=pathloss, serving=serving, irs=irs_cfg, noise=noise_cfg,
                  interference_dl=idl, interference_ul=iul, payload=payload_cfg, mode=mode,
                  fading=fading)
    if r.issues or cfg is None:
        raise ConfigInvalid(r.issues or [("", "configuration is incomplete")])
    return cfg


def loads_config(text: str) -> ScenarioConfig:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigInvalid([("", f"TOML syntax error: {exc}")]) from None
    return config_from_dict(doc)


def parse_config(path) -> ScenarioConfig:
    """Read and validate a scenario file. I/O failures propagate as ``OSError``."""
    return loads_config(Path(path).read_text(encoding="utf-8"))


def _xyz(p):
    return [p.x, p.y, p.z]


def config_to_dict(cfg: ScenarioConfig) -> dict:
    def interference(c):
        d = {"mode": c.mode}
        if c.power is not None:
            d["power"] = c.power
        return d

    doc = {
        "mode": cfg.mode,
        "fading": cfg.fading,
        "payload": cfg.payload.bits,
        "carrier": {"f_c": cfg.carrier.f_c},
        "radio": {"p_t_downlink": cfg.radio.p_t_downlink, "p_t_uplink": cfg.radio.p_t_uplink,
                  "b_downlink": cfg.radio.b_downlink, "b_uplink": cfg.radio.b_uplink},
        "macro": {"position": _xyz(cfg.macro.position), "p_t": cfg.macro.p_t},
        "micro": {"positions": [_xyz(p) for p in cfg.micro_positions], "serving": cfg.serving,
                  "alpha": cfg.micro_pathloss.alpha,
                  "lambda_exponent": cfg.micro_pathloss.lambda_exponent},
        "device": {"placement": cfg.device.kind},
        "noise": {"mode": cfg.noise.mode, "T0": cfg.noise.T0, "noise_figure": cfg.noise.noise_figure_db},
        "interference": {"downlink": interference(cfg.interference_dl),
                         "uplink": interference(cfg.interference_ul)},
        "tiers": {"lambda_mac": cfg.tiers.lambda_mac, "lambda_mic": cfg.tiers.lambda_mic,
                  "lambda_u": cfg.tiers.lambda_u, "alpha_mac": cfg.tiers.alpha_mac},
    }
    if cfg.noise.power is not None:
        doc["noise"]["power"] = cfg.noise.power
    if cfg.device.kind == "fixed":
        doc["device"]["positions"] = [_xyz(p) for p in cfg.device.positions]
    else:
        doc["device"]["radius"] = cfg.device.radius
        doc["device"]["height"] = cfg.device.height
    if cfg.irs is not None:
        irs = cfg.irs
        d = {"M": irs.M, "N": irs.N_elem, "d_x": irs.d_x, "d_y": irs.d_y, "A": irs.A,
             "G_t": irs.G_t, "G_r": irs.G_r}
        if irs.pose is not None:
            d["center"] = _xyz(irs.pose.center)
            d["normal"] = list(irs.pose.normal)
        if irs.theta_t is not None:
            d["theta_t"] = irs.theta_t
        if irs.theta_r is not None:
            d["theta_r"] = irs.theta_r
        doc["irs"] = d
    return doc


def dumps_config(cfg: ScenarioConfig) -> str:
    """Canonical TOML text in SI units."""
    return tomli_w.dumps(config_to_dict(cfg))


def config_digest(cfg: ScenarioConfig) -> str:
    """SHA-256 of the canonical serialisation; independent of file formatting."""
    return hashlib.sha256(dumps_config(cfg).encode("utf-8")).hexdigest()
