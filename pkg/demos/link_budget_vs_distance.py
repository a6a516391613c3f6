"""
Received power versus distance
==============================

Direct-link power against the cascaded IRS path as the device walks away
from its micro BS. Fading is switched off so every number is exact.
"""
from pathlib import Path

import numpy as np

import irsiot

cfg = irsiot.parse_config(Path(__file__).parents[1] / "configs" / "irs_advantage.toml")
lam = cfg.carrier.wavelength
bs = cfg.serving_position

# The direct link follows a power law in distance.
distances = np.array([25.0, 50.0, 100.0, 200.0, 400.0])
direct = irsiot.conventional_received_power(cfg.radio.p_t_downlink, lam, 1.0, distances, cfg.micro_pathloss)

# The IRS path only depends on the two hop lengths; keep the IRS 24 m from
# the device and let the BS-IRS hop grow with the device distance.
geom = irsiot.IrsLinkGeometry(d1=distances, d2=24.0, theta_t=0.7, theta_r=1.2)
reflected = irsiot.irs_received_power(cfg.radio.p_t_downlink, cfg.irs, geom, lam)

print(f"{'d [m]':>8} {'direct [dBm]':>14} {'IRS [dBm]':>12}")
for d, p, q in zip(distances, direct, reflected):
    print(f"{d:8.0f} {irsiot.units.watts_to_dbm(p):14.1f} {irsiot.units.watts_to_dbm(q):12.1f}")

# %%
# The direct path loses 10*alpha dB per decade, the IRS path 20 dB per
# decade of the BS-IRS hop.
slope = np.diff(10 * np.log10(direct)) / np.diff(np.log10(distances))
print("direct slope per decade:", slope.round(2))
