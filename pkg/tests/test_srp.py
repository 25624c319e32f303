import math

import numpy as np
import pytest

from leosrp.ephemeris import analytic_sun_table
from leosrp.errors import DomainError, EphemerisRangeError
from leosrp.kepler import KeplerianElements
from leosrp.srp import (SrpConfig, inclination_delta, km_day2_to_km_s2,
                        km_s2_to_km_day2, perturb_sweep, srp_acceleration,
                        srp_force, srp_perturbation, srp_year_series,
                        table_sun_position, two_body_position)
from leosrp.timeframe import CONSTANTS, Epoch

AU = CONSTANTS.au
EPOCH = Epoch(2459905.5)

# frozen closed-form magnitude for Cr=1.3, A=1 m^2, M=15 kg at exactly 1 AU:
# 1.3 * 4.56e-6 * (1/15) m/s^2
MAG_1AU_M_S2 = 1.3 * 4.56e-6 / 15.0


def default_cfg():
    return SrpConfig()


def test_config_defaults():
    cfg = default_cfg()
    assert cfg.emissivity == 0.30
    assert cfg.cr == pytest.approx(1.30)
    assert cfg.mass == 15.0
    assert cfg.area == 1.0
    assert cfg.area_to_mass == pytest.approx(1.0 / 15.0)


def test_config_validation():
    with pytest.raises(DomainError):
        SrpConfig(mass=0.0)
    with pytest.raises(DomainError):
        SrpConfig(area=-1.0)
    with pytest.raises(DomainError):
        SrpConfig(emissivity=-0.1)


def test_magnitude_at_one_au():
    r_sat = np.zeros(3)
    r_sun = np.array([AU, 0.0, 0.0])
    acc = srp_acceleration(r_sat, r_sun, default_cfg())
    mag_m_s2 = np.linalg.norm(acc) * 1000.0
    assert mag_m_s2 == pytest.approx(3.952e-7, abs=1e-10)
    assert mag_m_s2 == pytest.approx(MAG_1AU_M_S2, rel=1e-12)


def test_direction_anti_sunward():
    r_sat = np.array([7000.0, 0.0, 0.0])
    r_sun = np.array([AU, 0.0, 0.0])
    acc = srp_acceleration(r_sat, r_sun, default_cfg())
    away = r_sat - r_sun
    cosang = float(np.dot(acc, away)) / (np.linalg.norm(acc) * np.linalg.norm(away))
    assert cosang == pytest.approx(1.0, abs=1e-14)


def test_inverse_square_scaling():
    cfg = default_cfg()
    r_sat = np.zeros(3)
    m1 = np.linalg.norm(srp_acceleration(r_sat, np.array([AU, 0.0, 0.0]), cfg))
    m2 = np.linalg.norm(srp_acceleration(r_sat, np.array([2.0 * AU, 0.0, 0.0]), cfg))
    assert m1 / m2 == pytest.approx(4.0, rel=1e-12)


def test_shadow_zeroes_acceleration():
    r_sat = np.zeros(3)
    r_sun = np.array([AU, 0.0, 0.0])
    acc = srp_acceleration(r_sat, r_sun, default_cfg(), nu=0)
    assert np.all(acc == 0.0)


def test_force_from_acceleration():
    r_sun = np.array([AU, 0.0, 0.0])
    acc = srp_acceleration(np.zeros(3), r_sun, default_cfg())
    force = srp_force(acc, 15.0)
    assert np.linalg.norm(force) == pytest.approx(5.928e-6, abs=2e-9)  # N


def test_unit_conversions_invert():
    assert km_s2_to_km_day2(km_day2_to_km_s2(0.00994)) == pytest.approx(0.00994, rel=1e-15)
    assert km_day2_to_km_s2(1.0) == pytest.approx(1.0 / 86400.0 ** 2, rel=1e-15)


# --- year series ---

def test_year_series_ratio(el0):
    table = analytic_sun_table(2459905.5, 2460270.5, step_days=1.0)
    cfg = SrpConfig(nu_override=1)  # lit everywhere so the minimum is real
    samples = srp_year_series(table, two_body_position(el0), cfg)
    assert len(samples) == 366
    mags = np.array([s.magnitude for s in samples])
    ratio = mags.max() / mags.min()
    assert ratio == pytest.approx(1.069, abs=0.01)
    mags_day = km_s2_to_km_day2(1.0) * mags
    assert 2.7 < mags_day.min() and mags_day.max() < 3.2


def test_year_series_respects_span(el0):
    table = analytic_sun_table(2459905.5, 2459910.5)
    with pytest.raises(EphemerisRangeError):
        srp_year_series(table, two_body_position(el0), default_cfg(),
                        jd_start=2459900.5, jd_stop=2459910.5)


def test_year_series_shadow_fraction(el0):
    table = analytic_sun_table(2459905.5, 2460270.5, step_days=1.0)
    samples = srp_year_series(table, two_body_position(el0),
                              default_cfg())  # geometric shadow by default
    dark = sum(1 for s in samples if s.nu == 0)
    # daily snapshots of a dawn-dusk-ish LEO spend roughly a third eclipsed
    assert 0.25 < dark / len(samples) < 0.5
    for s in samples:
        if s.nu == 0:
            assert s.magnitude == 0.0


# --- inclination drift ---

def test_drift_constant_w_closed_form():
    a = 6928.18
    n = math.sqrt(CONSTANTS.mu_earth / a ** 3)
    period = 2.0 * math.pi / n
    w = km_day2_to_km_s2(0.00994)

    def u_of_t(t):
        return -0.5 * math.pi + n * t

    # constant W across u in [-pi/2, pi/2] integrates to 2 W / (n^2 a)
    delta = inclination_delta(lambda t: w, u_of_t, n, a,
                              0.0, period / 2.0, period / 4096.0)
    expect = 2.0 * w / (n ** 2 * a)
    assert delta == pytest.approx(expect, rel=1e-6)


def test_drift_full_period_cancels():
    a = 6928.18
    n = math.sqrt(CONSTANTS.mu_earth / a ** 3)
    period = 2.0 * math.pi / n
    w = km_day2_to_km_s2(0.00994)
    scale = 2.0 * w / (n ** 2 * a)

    delta = inclination_delta(lambda t: w, lambda t: -0.5 * math.pi + n * t,
                              n, a, 0.0, period, period / 4096.0)
    assert abs(delta) < 1e-9 * scale


def test_drift_argument_checks():
    with pytest.raises(DomainError):
        inclination_delta(lambda t: 0.0, lambda t: 0.0, -1.0, 7000.0,
                          0.0, 10.0, 1.0)
    with pytest.raises(DomainError):
        inclination_delta(lambda t: 0.0, lambda t: 0.0, 0.001, 7000.0,
                          10.0, 10.0, 1.0)


# --- sweep ---

def test_sweep_entries(el0):
    entries = perturb_sweep(0.00994, 1e-4, 50, el0)
    assert len(entries) == 50
    mags = [e.a_srp_km_day2 for e in entries]
    assert mags[0] == pytest.approx(0.00994)
    steps = np.diff(mags)
    assert np.allclose(steps, 1e-4)
    # inclination strictly grows with the pushed magnitude
    incs = [e.elements.i for e in entries]
    assert all(b > a for a, b in zip(incs, incs[1:]))
    # everything else survives untouched
    for e in entries:
        assert e.elements.a == el0.a
        assert e.elements.raan == el0.raan
        assert e.elements.e == el0.e


def test_sweep_delta_affine_in_index(el0):
    entries = perturb_sweep(0.00994, 1e-4, 20, el0)
    deltas = np.array([e.delta_i for e in entries])
    second = np.diff(deltas, n=2)
    assert np.max(np.abs(second)) < 1e-12 * np.max(np.abs(deltas))


def test_sweep_scales_with_magnitude(el0):
    a = el0.a
    n = math.sqrt(CONSTANTS.mu_earth / a ** 3)
    entries = perturb_sweep(0.00994, 0.0, 1, el0)
    expect = 2.0 * km_day2_to_km_s2(0.00994) / (n ** 2 * a)
    assert entries[0].delta_i == pytest.approx(expect, rel=1e-5)


def test_sweep_rejects_eccentric(el0):
    ecc = KeplerianElements(a=el0.a, e=0.01, i=el0.i, raan=el0.raan,
                            argp=el0.argp, true_anomaly=el0.true_anomaly,
                            epoch=el0.epoch)
    with pytest.raises(DomainError):
        perturb_sweep(0.00994, 1e-4, 5, ecc)


# --- propagation hook ---

def test_perturbation_hook_magnitude(el0):
    table = analytic_sun_table(2459905.5, 2459906.5, step_days=0.5)
    sun = table_sun_position(table)
    hook = srp_perturbation(SrpConfig(nu_override=1), sun)
    r_sat = np.array([6928.18, 0.0, 0.0])
    acc = hook(r_sat, np.zeros(3), EPOCH)
    r_sun = sun(EPOCH)
    dist = np.linalg.norm(r_sat - r_sun)
    mag_expected = (1.3 * CONSTANTS.p0 * (1.0 / 15.0) / 1000.0) * (AU / dist) ** 2
    assert np.linalg.norm(acc) == pytest.approx(mag_expected, rel=1e-12)
