"""Exit criteria. Each test is one criterion; the summary prints PASS/FAIL per line."""
import dataclasses
import math
import time

import numpy as np
import pytest
from scipy import stats

from irsiot import (IrsConfig, IrsLinkGeometry, PathLossParams, Payload, RngStream, TierConfig,
                    association_probability, average_device_count, compare_scenarios,
                    conventional_received_power, irs_received_power, mean_association_probability, run_scenario,
                    sample_fading, sinr, spectral_efficiency, throughput, transmission_delay)
from irsiot.cli import main

from .conftest import CONFIGS

FOUR_PI_SQ = (4 * math.pi) ** 2


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.acceptance("equation oracles match independent evaluation to 1e-9 (< 1 s)")
def test_equation_oracles(canonical):
    t0 = time.perf_counter()
    checks = []

    p_conv = conventional_received_power(1.0, 0.1, 1.0, 10.0, PathLossParams(2.0))
    checks.append((p_conv, 1.0 * 0.1 * 1.0 / (FOUR_PI_SQ * 10.0**2), 6.3326e-6, 1e-4 * 6.3326e-6))

    irs = IrsConfig(M=100, N_elem=100, d_x=0.005, d_y=0.005, A=1.0)
    p_irs = irs_received_power(1.0, irs, IrsLinkGeometry(10.0, 10.0, 0.0, 0.0), 0.01)
    g = 4 * math.pi * 0.005 * 0.005 / 0.01**2
    oracle_irs = g * 100**2 * 100**2 * 0.005 * 0.005 * 0.01**2 / (64 * math.pi**3 * (10.0 * 10.0) ** 2)
    checks.append((p_irs, oracle_irs, 3.9579e-8, 1e-4 * 3.9579e-8))

    s = sinr(6.3326e-6, 1e-8, 3.981e-15)
    checks.append((s, 6.3326e-6 / (1e-8 + 3.981e-15), 633.2, 0.1))

    t = throughput(1e6, 633.2)
    checks.append((t, 1e6 * math.log(634.2) / math.log(2), 9.3095e6, 1e3))
    checks.append((spectral_efficiency(9.3095e6, 1e6), 9.3095, 9.3095, 1e-12))

    d = transmission_delay(Payload(12_000), 9.3095e6)
    checks.append((d, 12_000 / 9.3095e6, 1.2890e-3, 1e-6))

    a = association_probability(TierConfig(1e-6, 1e-5, alpha_mac=4.0), 10.0, 1.0)
    checks.append((a, 1 / (1 + 0.1 * math.sqrt(10)), 0.75976, 2e-5))

    n = average_device_count(TierConfig(1e-6, 1e-5, lambda_u=1e-3), 0.5)
    checks.append((n, 1 + 1.28 * 100 * 0.5, 65.0, 1e-9))

    for got, oracle, quoted, tol in checks:
        assert rel(got, oracle) <= 1e-9
        assert abs(got - quoted) <= tol

    # the same chain through the scenario engine with fading off
    summary = run_scenario(canonical, 1, seed=0)
    assert rel(summary["rx_power_dl"].mean, checks[0][1]) <= 1e-9
    t_full = 1e6 * math.log2(1 + checks[0][1] / (1e-8 + 3.981e-15))
    assert rel(summary["throughput_ul"].mean, t_full) <= 1e-9
    assert rel(summary["delay_ul"].mean, 12_000 / t_full) <= 1e-9
    assert rel(run_scenario(canonical, 1, 0, mode="irs")["rx_power_dl"].mean, oracle_irs) <= 1e-9
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.acceptance("scaling laws exact to 1e-12 over 1000 random draws (< 5 s)")
def test_scaling_laws():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        alpha = rng.uniform(1.5, 6.0)
        d = rng.uniform(1.0, 5e3)
        lam = rng.uniform(1e-3, 1.0)
        params = PathLossParams(alpha)
        p1 = conventional_received_power(1.0, lam, 1.0, d, params)
        p2 = conventional_received_power(1.0, lam, 1.0, 2 * d, params)
        assert rel(p2 / p1, 2.0**-alpha) <= 1e-12

        m, n = int(rng.integers(1, 1000)), int(rng.integers(1, 1000))
        a = rng.uniform(0.01, 1.0)
        kw = dict(d_x=rng.uniform(1e-3, 0.1), d_y=rng.uniform(1e-3, 0.1), G_t=rng.uniform(0.5, 10),
                  G_r=rng.uniform(0.5, 10))
        tt, tr = rng.uniform(0, 1.5, 2)
        geom = IrsLinkGeometry(rng.uniform(1, 500), rng.uniform(1, 500), tt, tr)
        base = irs_received_power(1.0, IrsConfig(M=m, N_elem=n, A=a, **kw), geom, lam)
        k = int(rng.integers(2, 8))
        ka = rng.uniform(0.05, 1.0)
        assert rel(irs_received_power(1.0, IrsConfig(M=k * m, N_elem=n, A=a, **kw), geom, lam) / base, k**2) <= 1e-12
        assert rel(irs_received_power(1.0, IrsConfig(M=m, N_elem=k * n, A=a, **kw), geom, lam) / base, k**2) <= 1e-12
        assert rel(irs_received_power(1.0, IrsConfig(M=m, N_elem=n, A=a * ka, **kw), geom, lam) / base,
                   ka**2) <= 1e-12
        flat = IrsLinkGeometry(geom.d1, geom.d2, 0.0, tr)
        ratio = base / irs_received_power(1.0, IrsConfig(M=m, N_elem=n, A=a, **kw), flat, lam)
        assert rel(ratio, math.cos(tt)) <= 1e-12
    # grazing incidence drives the reflected power to zero
    irs = IrsConfig(M=100, N_elem=100, d_x=0.005, d_y=0.005)
    ref = irs_received_power(1.0, irs, IrsLinkGeometry(10, 10, 0.0, 0.0), 0.01)
    for eps in (1e-3, 1e-6, 1e-9, 1e-12):
        p = irs_received_power(1.0, irs, IrsLinkGeometry(10, 10, math.pi / 2 - eps, 0.0), 0.01)
        assert rel(p / ref, math.cos(math.pi / 2 - eps)) <= 1e-12 or p / ref <= 1.01 * eps
    assert time.perf_counter() - t0 < 5.0


@pytest.mark.acceptance("fading: 1e6 samples, mean 1 +- 0.005, KS below 1% critical value (< 10 s)")
def test_fading_statistics():
    t0 = time.perf_counter()
    h = sample_fading(RngStream(20240601, 0), size=1_000_000)
    assert abs(h.mean() - 1.0) <= 0.005
    ks = stats.kstest(h, "expon").statistic
    assert ks < stats.kstwo.ppf(0.99, len(h))
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.acceptance("association identities: complement, IRS monotone coupling, device-count affinity")
def test_association_identities():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        lmac, lmic = 10 ** rng.uniform(-8, -3, 2)
        pmac, pmic = 10 ** rng.uniform(-15, 1, 2)
        am = rng.uniform(2.05, 6)
        a1 = association_probability(TierConfig(lmac, lmic, alpha_mac=am), pmac, pmic)
        a2 = association_probability(TierConfig(lmic, lmac, alpha_mac=am), pmic, pmac)
        assert abs(a1 + a2 - 1.0) <= 1e-12

        # IRS received power at least the conventional one gives at least the same probability
        p_irs = pmic * 10 ** rng.uniform(0, 3)
        tiers = TierConfig(lmac, lmic, lambda_u=10 ** rng.uniform(-6, -2), alpha_mac=am)
        a_conv = association_probability(tiers, pmac, pmic)
        a_irs = association_probability(tiers, pmac, p_irs)
        assert a_irs >= a_conv

        slope = 1.28 * tiers.lambda_u / tiers.lambda_mic
        x = rng.uniform(0, 1)
        assert average_device_count(tiers, x) == 1.0 + slope * x
        assert average_device_count(tiers, 0.0) == 1.0


@pytest.mark.acceptance("Monte Carlo: faded power within 1% at 1e5 reps; CI ~ n^-1/2 within 1.2 (< 60 s)")
def test_monte_carlo_convergence(advantage, urban):
    t0 = time.perf_counter()
    faded = run_scenario(advantage, 100_000, seed=1)
    flat = run_scenario(dataclasses.replace(advantage, fading=False), 1, seed=1)
    for name in ("rx_power_dl", "rx_power_ul"):
        assert rel(faded[name].mean, flat[name].mean) <= 0.01

    cis = [mean_association_probability(urban, 60.0, n, RngStream(77, i))[1]
           for i, n in enumerate((1_000, 10_000, 100_000))]
    for wide, narrow in zip(cis, cis[1:]):
        ratio = (wide / narrow) / math.sqrt(10)
        assert 1 / 1.2 <= ratio <= 1.2
    assert time.perf_counter() - t0 < 60.0


@pytest.mark.acceptance("determinism: byte-identical CSV/JSON across runs and worker counts {1, 4}")
def test_determinism_artifacts(tmp_path):
    cfg = str(CONFIGS / "urban_disc.toml")
    outputs = []
    for tag, workers in (("a", "1"), ("b", "1"), ("c", "4")):
        for command in ("simulate", "compare"):
            out = tmp_path / f"{command}-{tag}"
            assert main([command, "--config", cfg, "--seed", "12345", "--replications", "10000",
                         "--workers", workers, "--out", str(out)]) == 0
            outputs.append((command, tag, out))
        out = tmp_path / f"sweep-{tag}"
        assert main(["sweep", "--config", cfg, "--seed", "12345", "--replications", "5000", "--workers", workers,
                     "--param", "irs.M", "--values", "32,64", "--out", str(out)]) == 0
        outputs.append(("sweep", tag, out))
    by_command = {}
    for command, tag, out in outputs:
        blobs = ((out / f"{command}.csv").read_bytes(), (out / f"{command}.json").read_bytes())
        by_command.setdefault(command, []).append(blobs)
    for command, blobs in by_command.items():
        assert len(blobs) == 3
        assert blobs[0] == blobs[1] == blobs[2], command


@pytest.mark.acceptance("directional: shipped config where IRS beats conventional on every metric")
def test_irs_advantage_config(advantage):
    report = compare_scenarios(advantage, 5000, seed=2024)
    conv, irs = report.conventional, report.irs
    higher = ["rx_power_dl", "rx_power_ul", "sinr_dl", "sinr_ul", "throughput_dl", "throughput_ul",
              "se_dl", "se_ul", "association", "served_devices"]
    for name in higher:
        assert irs[name].mean > conv[name].mean, name
    assert irs["delay_ul"].mean < conv["delay_ul"].mean
    # and the gap is far outside Monte Carlo noise
    for name in higher:
        assert irs[name].mean - conv[name].mean > 3 * (irs[name].ci95 + conv[name].ci95), name
