"""
How large must the surface be?
==============================

Sweep the number of IRS rows on the hand-checkable canonical scenario and
find where the reflected link overtakes the direct one. Received power
grows with the square of the element count.
"""
import dataclasses
from pathlib import Path

import irsiot

cfg = irsiot.parse_config(Path(__file__).parents[1] / "configs" / "canonical.toml")
direct = irsiot.run_scenario(cfg, replications=1, seed=0)["sinr_dl"].mean

irs_cfg = dataclasses.replace(cfg, mode="irs")
rows = (100, 200, 400, 800, 1600)
table = irsiot.sweep(irs_cfg, irsiot.SweepSpec("irs.M", rows, replications=1, seed=0))

for m, s in zip(rows, table.column("sinr_dl")):
    marker = "<- IRS ahead" if s > direct else ""
    print(f"M = {m:5d}   IRS SINR = {s:10.2f}   direct SINR = {direct:.2f} {marker}")

# %%
# The power ratio between consecutive rows is exactly four.
p = table.column("rx_power_dl")
print("ratios:", (p[1:] / p[:-1]).tolist())
