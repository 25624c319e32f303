"""Cannonball solar-radiation-pressure acceleration and its orbit effects.

The cannonball model scales the 1 AU radiation pressure p0 by a radiation
coefficient cr = 1 + emissivity and the craft's area-to-mass ratio, with an
inverse-square falloff in the Sun-satellite distance and a shadow factor nu
that is either forced or taken from the cylindrical eclipse test:

    a = nu * (cr * p0 * A / M) * AU^2 * (r_sat - r_sun) / |r_sat - r_sun|^3

The acceleration points away from the Sun.  Inclination change over an
exposure window follows from the out-of-plane component W through

    delta_i = (1 / (n a)) * integral W(t) cos(u(t)) dt

evaluated with composite trapezoid quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .ephemeris import EphemerisTable, interpolate, shadow_factor
from .errors import DomainError, EphemerisRangeError
from .kepler import KeplerianElements, elements_at, elements_to_state
from .timeframe import CONSTANTS, Epoch

SECONDS_PER_DAY = 86400.0


def km_day2_to_km_s2(value: float) -> float:
    """Convert an acceleration from km/day^2 to km/s^2."""
    return value / SECONDS_PER_DAY ** 2


def km_s2_to_km_day2(value: float) -> float:
    """Convert an acceleration from km/s^2 to km/day^2."""
    return value * SECONDS_PER_DAY ** 2


@dataclass(frozen=True)
class SrpConfig:
    """Cannonball craft parameters.

    Attributes:
        emissivity: Surface emissivity; the radiation coefficient is
            cr = 1 + emissivity.
        mass: Craft mass, kg.
        area: Sun-facing cross section, m^2.
        nu_override: Force the shadow factor to 0 or 1; None selects the
            geometric cylindrical-shadow test.
    """

    emissivity: float = 0.30
    mass: float = 15.0
    area: float = 1.0
    nu_override: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.emissivity <= 1.0:
            raise DomainError(f"emissivity {self.emissivity} outside [0, 1]")
        if not self.mass > 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if not self.area > 0.0:
            raise DomainError(f"area must be positive, got {self.area}")
        if self.nu_override not in (None, 0, 1):
            raise DomainError(
                f"nu_override must be None, 0, or 1, got {self.nu_override}")

    @property
    def cr(self) -> float:
        """Radiation coefficient 1 + emissivity."""
        return 1.0 + self.emissivity

    @property
    def area_to_mass(self) -> float:
        """Area-to-mass ratio, m^2/kg."""
        return self.area / self.mass


@dataclass(frozen=True)
class SrpSample:
    """One evaluated acceleration sample.

    accel is km/s^2; magnitude is |accel|; sun_distance is the
    Sun-to-satellite distance in km.
    """

    epoch: Epoch
    accel: np.ndarray
    magnitude: float
    nu: int
    sun_distance: float


@dataclass(frozen=True)
class SweepEntry:
    """One magnitude step of an inclination sweep."""

    a_srp_km_day2: float
    delta_i: float
    elements: KeplerianElements


def srp_acceleration(r_sat, r_sun_geo, cfg: SrpConfig, nu: int = 1) -> np.ndarray:
    """Cannonball acceleration on the craft, km/s^2.

    Args:
        r_sat: Satellite geocentric position, km.
        r_sun_geo: Sun geocentric position, km.
        cfg: Craft parameters.
        nu: Shadow factor, 0 or 1.

    Returns:
        Acceleration vector pointing from the Sun through the satellite.

    Raises:
        DomainError: If nu is not 0 or 1, or the satellite coincides with
            the Sun position.
    """
    if nu not in (0, 1):
        raise DomainError(f"nu must be 0 or 1, got {nu}")
    r_sat = np.asarray(r_sat, dtype=float)
    r_sun = np.asarray(r_sun_geo, dtype=float)
    offset = r_sat - r_sun
    dist = float(np.linalg.norm(offset))
    if dist == 0.0:
        raise DomainError("satellite coincides with the Sun position")
    base_m_s2 = cfg.cr * CONSTANTS.p0 * cfg.area / cfg.mass
    scale = nu * (base_m_s2 / 1000.0) * CONSTANTS.au ** 2 / dist ** 3
    return scale * offset


def srp_force(accel_km_s2, mass: float) -> np.ndarray:
    """Force on the craft in newtons for an acceleration in km/s^2."""
    if not mass > 0.0:
        raise DomainError(f"mass must be positive, got {mass}")
    return mass * 1000.0 * np.asarray(accel_km_s2, dtype=float)


def two_body_position(el0: KeplerianElements):
    """Provider closure: epoch -> satellite position on a two-body orbit."""
    def position(epoch: Epoch) -> np.ndarray:
        return elements_to_state(elements_at(el0, epoch)).r
    return position


def srp_year_series(table: EphemerisTable, sat_position, cfg: SrpConfig,
                    jd_start: float | None = None,
                    jd_stop: float | None = None) -> list[SrpSample]:
    """Evaluate the acceleration at every table record.

    Args:
        table: Sun ephemeris table (daily records for a year series).
        sat_position: Callable epoch -> satellite position, km.
        cfg: Craft parameters; nu_override selects forced vs geometric
            shadowing.
        jd_start, jd_stop: Optional span filter; the table must cover it.

    Returns:
        One SrpSample per (filtered) record.

    Raises:
        EphemerisRangeError: If a requested span is not covered by the table.
    """
    lo, hi = table.span
    if jd_start is not None and jd_start < lo - 1e-9:
        raise EphemerisRangeError(
            f"table starts at jd {lo}, requested {jd_start}")
    if jd_stop is not None and jd_stop > hi + 1e-9:
        raise EphemerisRangeError(
            f"table ends at jd {hi}, requested {jd_stop}")

    samples = []
    for rec in table.records:
        jd = rec.epoch.jd
        if jd_start is not None and jd < jd_start - 1e-9:
            continue
        if jd_stop is not None and jd > jd_stop + 1e-9:
            continue
        r_sat = sat_position(rec.epoch)
        if cfg.nu_override is not None:
            nu = cfg.nu_override
        else:
            nu = shadow_factor(r_sat, rec.sun_geocentric)
        acc = srp_acceleration(r_sat, rec.sun_geocentric, cfg, nu=nu)
        samples.append(SrpSample(
            epoch=rec.epoch, accel=acc,
            magnitude=float(np.linalg.norm(acc)), nu=nu,
            sun_distance=float(np.linalg.norm(r_sat - rec.sun_geocentric))))
    return samples


def srp_perturbation(cfg: SrpConfig, sun_position):
    """Build a propagation hook accel(r, v, epoch) for the force model.

    Args:
        cfg: Craft parameters; nu_override forces the shadow factor.
        sun_position: Callable epoch -> geocentric Sun position, km (an
            ephemeris interpolant or the analytic model).
    """
    def hook(r, v, epoch):
        r_sun = sun_position(epoch)
        if cfg.nu_override is not None:
            nu = cfg.nu_override
        else:
            nu = shadow_factor(r, r_sun)
        return srp_acceleration(r, r_sun, cfg, nu=nu)
    return hook


def table_sun_position(table: EphemerisTable):
    """Provider closure: epoch -> interpolated Sun position from a table."""
    def position(epoch: Epoch) -> np.ndarray:
        return interpolate(table, epoch).sun_geocentric
    return position


def inclination_delta(w_fn, u_fn, n: float, a: float,
                      t0: float, t1: float, dt: float) -> float:
    """Inclination change from an out-of-plane acceleration profile, rad.

    Composite-trapezoid evaluation of

        delta_i = (1 / (n a)) * integral_{t0}^{t1} W(t) cos(u(t)) dt

    with W in km/s^2 and u the argument of latitude in radians.  The grid
    runs at step dt with a final partial interval so t1 is hit exactly.

    Raises:
        DomainError: If the window or step is empty/non-positive, or n or a
            is not positive.
    """
    if not (n > 0.0 and a > 0.0):
        raise DomainError(f"mean motion and radius must be positive "
                          f"(n={n}, a={a})")
    if not t1 > t0:
        raise DomainError(f"empty window: t1 {t1} <= t0 {t0}")
    if not dt > 0.0:
        raise DomainError(f"step must be positive, got {dt}")
    n_full = int((t1 - t0) / dt + 1e-9)
    ts = t0 + dt * np.arange(n_full + 1)
    if ts[-1] < t1 - 1e-9 * max(1.0, abs(t1)):
        ts = np.append(ts, t1)
    vals = np.array([w_fn(t) * math.cos(u_fn(t)) for t in ts])
    integral = float(np.trapezoid(vals, ts))
    return integral / (n * a)


def perturb_sweep(a_start_km_day2: float, step_km_day2: float, count: int,
                  el0: KeplerianElements, per_orbit_exposure: float = 0.5,
                  quad_dt: float | None = None,
                  mu: float = CONSTANTS.mu_earth) -> list[SweepEntry]:
    """Sweep acceleration magnitudes into perturbed element sets.

    Each entry applies a constant out-of-plane acceleration W over an
    exposure window that starts at argument of latitude u = -pi/2 and spans
    the given fraction of one orbital period (the default half period ends
    at u = +pi/2, where the cos(u) integral is maximal).  Only the
    inclination changes: i_new = i + delta_i.

    Args:
        a_start_km_day2: First magnitude, km/day^2.
        step_km_day2: Magnitude increment per entry.
        count: Number of entries (>= 1).
        el0: Base orbit; must be circular (e < 1e-6).
        per_orbit_exposure: Window length as a fraction of the period,
            in (0, 1].
        quad_dt: Trapezoid step, seconds; default period / 4096.

    Raises:
        DomainError: If el0 is not circular or the parameters are out of
            range.
    """
    if el0.e >= 1e-6:
        raise DomainError(
            f"sweep requires a circular base orbit, got e = {el0.e}")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if not 0.0 < per_orbit_exposure <= 1.0:
        raise DomainError(
            f"per_orbit_exposure {per_orbit_exposure} outside (0, 1]")
    if a_start_km_day2 < 0.0 or step_km_day2 < 0.0:
        raise DomainError("sweep magnitudes must be non-negative")

    a = el0.a
    n = math.sqrt(mu / a ** 3)
    period = 2.0 * math.pi / n
    window = per_orbit_exposure * period
    dt = period / 4096.0 if quad_dt is None else quad_dt

    def u_of_t(t):
        return -0.5 * math.pi + n * t

    entries = []
    for k in range(count):
        mag_day = a_start_km_day2 + k * step_km_day2
        w = km_day2_to_km_s2(mag_day)
        delta_i = inclination_delta(lambda t: w, u_of_t, n, a,
                                    0.0, window, dt)
        entries.append(SweepEntry(
            a_srp_km_day2=mag_day, delta_i=delta_i,
            elements=replace(el0, i=el0.i + delta_i)))
    return entries
