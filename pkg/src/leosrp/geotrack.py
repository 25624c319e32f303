"""Ground tracks, visibility geometry, and ground-station pass schedules.

The Earth model is a rotating sphere: inertial-to-fixed is a single z-axis
rotation by the sidereal angle, and geodetic quantities reduce to spherical
latitude/longitude.  Visibility supports two criteria: station elevation
above a mask angle, and a nadir-pointing field-of-view cone on the
satellite.  Pass boundaries are refined by bisection to one second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .timeframe import (CONSTANTS, Epoch, GMST_AT_J2000_DEG,
                        GMST_RATE_DEG_PER_DAY, JD_J2000, gmst)
from .propagator import Trajectory


@dataclass(frozen=True)
class GeoPoint:
    """Spherical-Earth coordinates: latitude/longitude deg, altitude km."""

    lat: float
    lon: float
    alt: float = 0.0

    def __post_init__(self):
        if self.lat < -90.0 - 1e-9 or self.lat > 90.0 + 1e-9:
            raise DomainError(f"latitude {self.lat} outside [-90, 90]")
        object.__setattr__(self, "lat", min(max(self.lat, -90.0), 90.0))
        lon = ((self.lon + 180.0) % 360.0) - 180.0
        if lon == -180.0:
            lon = 180.0
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class GroundStation:
    """A named station with an elevation mask."""

    location: GeoPoint
    mask_deg: float = 5.0
    name: str = ""

    def __post_init__(self):
        if not 0.0 <= self.mask_deg < 90.0:
            raise DomainError(f"mask {self.mask_deg} outside [0, 90)")


@dataclass(frozen=True)
class PassWindow:
    """One visibility window.

    direction is "ascending" or "descending" from the sign of the latitude
    rate at maximum elevation.
    """

    aos: Epoch
    los: Epoch
    duration: float
    max_elevation: float
    direction: str


@dataclass(frozen=True)
class RevisitSummary:
    """Aggregate pass statistics; max_gap is the longest AOS-to-AOS wait."""

    count: int
    min_duration: float
    mean_duration: float
    max_duration: float
    max_gap: float


def eci_to_ecef(r, epoch: Epoch) -> np.ndarray:
    """Rotate an inertial position into the Earth-fixed frame.

    A single z-rotation by the sidereal angle; the z component is unchanged.
    """
    r = np.asarray(r, dtype=float)
    theta = gmst(epoch)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([c * r[0] + s * r[1], -s * r[0] + c * r[1], r[2]])


def _eci_to_ecef_batch(positions: np.ndarray, jds: np.ndarray) -> np.ndarray:
    theta = np.radians(
        (GMST_AT_J2000_DEG + GMST_RATE_DEG_PER_DAY * (jds - JD_J2000)) % 360.0)
    c, s = np.cos(theta), np.sin(theta)
    out = np.empty_like(positions)
    out[:, 0] = c * positions[:, 0] + s * positions[:, 1]
    out[:, 1] = -s * positions[:, 0] + c * positions[:, 1]
    out[:, 2] = positions[:, 2]
    return out


def ecef_to_geo(r) -> GeoPoint:
    """Earth-fixed position to spherical latitude/longitude/altitude."""
    r = np.asarray(r, dtype=float)
    rn = float(np.linalg.norm(r))
    if rn == 0.0:
        raise DomainError("cannot geolocate the origin")
    lat = math.degrees(math.asin(r[2] / rn))
    lon = math.degrees(math.atan2(r[1], r[0]))
    return GeoPoint(lat=lat, lon=lon, alt=rn - CONSTANTS.r_earth)


def geo_to_ecef(point: GeoPoint) -> np.ndarray:
    """Spherical coordinates back to an Earth-fixed vector, km."""
    la, lo = math.radians(point.lat), math.radians(point.lon)
    rn = CONSTANTS.r_earth + point.alt
    return rn * np.array([math.cos(la) * math.cos(lo),
                          math.cos(la) * math.sin(lo),
                          math.sin(la)])


def ground_track(traj: Trajectory) -> list[tuple[Epoch, GeoPoint]]:
    """Sub-satellite points for every trajectory sample."""
    ecef = _eci_to_ecef_batch(traj.r, traj.jds)
    rn = np.linalg.norm(ecef, axis=1)
    lat = np.degrees(np.arcsin(ecef[:, 2] / rn))
    lon = np.degrees(np.arctan2(ecef[:, 1], ecef[:, 0]))
    alt = rn - CONSTANTS.r_earth
    return [(traj.epoch0.plus_seconds(float(tk)),
             GeoPoint(float(la), float(lo), float(al)))
            for tk, la, lo, al in zip(traj.t, lat, lon, alt)]


def track_segments(track) -> list[list[tuple[Epoch, GeoPoint]]]:
    """Split a ground track at anti-meridian crossings (|dlon| > 180)."""
    segments = []
    current = []
    prev_lon = None
    for epoch, point in track:
        if prev_lon is not None and abs(point.lon - prev_lon) > 180.0:
            segments.append(current)
            current = []
        current.append((epoch, point))
        prev_lon = point.lon
    if current:
        segments.append(current)
    return segments


def cap_angle(altitude_km: float, mask_deg: float = 0.0) -> tuple[float, float]:
    """Visibility cap half-angle and visible Earth fraction.

    For a satellite at the given altitude and a station elevation mask beta,
    the Earth-central half-angle of the visibility cap is

        alpha = arccos(r_e / (r_e + h) * cos(beta)) - beta

    and the visible surface fraction is (1 - cos(alpha)) / 2.

    Returns:
        (alpha_deg, visible_fraction)
    """
    if not altitude_km > 0.0:
        raise DomainError(f"altitude must be positive, got {altitude_km}")
    if not 0.0 <= mask_deg < 90.0:
        raise DomainError(f"mask {mask_deg} outside [0, 90)")
    beta = math.radians(mask_deg)
    ratio = CONSTANTS.r_earth / (CONSTANTS.r_earth + altitude_km)
    alpha = math.acos(ratio * math.cos(beta)) - beta
    fraction = (1.0 - math.cos(alpha)) / 2.0
    return math.degrees(alpha), fraction


def slant_range(a_km: float, alpha_deg: float) -> float:
    """Station-to-satellite distance at Earth-central angle alpha.

    Law of cosines between the station radius r_e and the orbit radius a:
    d = sqrt(a^2 + r_e^2 - 2 a r_e cos(alpha)).
    """
    if not a_km > 0.0:
        raise DomainError(f"orbit radius must be positive, got {a_km}")
    alpha = math.radians(alpha_deg)
    re = CONSTANTS.r_earth
    d2 = a_km * a_km + re * re - 2.0 * a_km * re * math.cos(alpha)
    return math.sqrt(max(d2, 0.0))


def _enu_basis(point: GeoPoint):
    la, lo = math.radians(point.lat), math.radians(point.lon)
    east = np.array([-math.sin(lo), math.cos(lo), 0.0])
    north = np.array([-math.sin(la) * math.cos(lo),
                      -math.sin(la) * math.sin(lo), math.cos(la)])
    up = np.array([math.cos(la) * math.cos(lo),
                   math.cos(la) * math.sin(lo), math.sin(la)])
    return east, north, up


def elevation_azimuth(station: GroundStation, r_ecef) -> tuple[float, float]:
    """Topocentric elevation and azimuth of an Earth-fixed position.

    Azimuth is degrees clockwise from north in [0, 360); elevation is
    degrees above the horizon.

    Raises:
        DomainError: If the position coincides with the station.
    """
    r_ecef = np.asarray(r_ecef, dtype=float)
    rho = r_ecef - geo_to_ecef(station.location)
    rn = float(np.linalg.norm(rho))
    if rn == 0.0:
        raise DomainError("look direction undefined: target at the station")
    east, north, up = _enu_basis(station.location)
    el = math.degrees(math.asin(float(np.dot(rho, up)) / rn))
    az = math.degrees(math.atan2(float(np.dot(rho, east)),
                                 float(np.dot(rho, north)))) % 360.0
    return el, az


def nadir_angle(station: GroundStation, r_ecef) -> float:
    """Angle at the satellite between nadir and the station direction, deg."""
    r_ecef = np.asarray(r_ecef, dtype=float)
    to_center = -r_ecef
    to_station = geo_to_ecef(station.location) - r_ecef
    nc = float(np.linalg.norm(to_center))
    ns = float(np.linalg.norm(to_station))
    if nc == 0.0 or ns == 0.0:
        raise DomainError("nadir angle undefined")
    cosang = float(np.dot(to_center, to_station)) / (nc * ns)
    return math.degrees(math.acos(min(1.0, max(-1.0, cosang))))


def _visibility_metric(station: GroundStation, criterion: str,
                       fov_deg: float):
    """Positive-when-visible metric for one ECEF position."""
    if criterion == "elevation":
        def metric(r_ecef):
            el, _ = elevation_azimuth(station, r_ecef)
            return el - station.mask_deg
    elif criterion == "fov":
        # the cone test alone also fires on the far side of the planet
        # (the station direction then runs near nadir), so require line
        # of sight as well; min() keeps the metric continuous for bisection
        def metric(r_ecef):
            el, _ = elevation_azimuth(station, r_ecef)
            return min(0.5 * fov_deg - nadir_angle(station, r_ecef), el)
    else:
        raise DomainError(
            f"unknown criterion {criterion!r}; use 'elevation' or 'fov'")
    return metric


def _interp_ecef(traj: Trajectory, t: float) -> np.ndarray:
    """ECEF position at offset t, linear in the inertial samples."""
    idx = np.searchsorted(traj.t, t)
    if idx <= 0:
        r_eci = traj.r[0]
    elif idx >= len(traj.t):
        r_eci = traj.r[-1]
    else:
        t0, t1 = traj.t[idx - 1], traj.t[idx]
        w = (t - t0) / (t1 - t0)
        r_eci = (1.0 - w) * traj.r[idx - 1] + w * traj.r[idx]
    return eci_to_ecef(r_eci, traj.epoch0.plus_seconds(t))


def _bisect_crossing(metric, traj, t_lo, t_hi, tol=1.0):
    """Find the metric zero between t_lo and t_hi to within tol seconds."""
    f_lo = metric(_interp_ecef(traj, t_lo))
    while t_hi - t_lo > tol:
        mid = 0.5 * (t_lo + t_hi)
        f_mid = metric(_interp_ecef(traj, mid))
        if (f_lo < 0.0) == (f_mid < 0.0):
            t_lo, f_lo = mid, f_mid
        else:
            t_hi = mid
    return 0.5 * (t_lo + t_hi)


def find_passes(traj: Trajectory, station: GroundStation,
                criterion: str = "elevation",
                fov_deg: float = 27.3) -> list[PassWindow]:
    """Scan a trajectory for visibility windows at one station.

    Samples are screened with the chosen criterion, then each window's
    AOS/LOS are refined by bisection to one second on a linear-in-time
    position interpolant.  Max elevation is measured on a one-second grid
    inside the window; the direction label follows the sign of the latitude
    rate at that moment.

    Args:
        traj: Propagated trajectory (step well below a pass length).
        station: Station with mask angle.
        criterion: "elevation" (above mask) or "fov" (inside the nadir cone).
        fov_deg: Full cone angle for the "fov" criterion.
    """
    metric = _visibility_metric(station, criterion, fov_deg)
    ecef = _eci_to_ecef_batch(traj.r, traj.jds)
    values = np.array([metric(ecef[k]) for k in range(len(ecef))])
    above = values >= 0.0

    windows = []
    n = len(above)
    k = 0
    while k < n:
        if not above[k]:
            k += 1
            continue
        j = k
        while j + 1 < n and above[j + 1]:
            j += 1
        t_aos = (float(traj.t[k]) if k == 0 else
                 _bisect_crossing(metric, traj, float(traj.t[k - 1]),
                                  float(traj.t[k])))
        t_los = (float(traj.t[j]) if j == n - 1 else
                 _bisect_crossing(metric, traj, float(traj.t[j]),
                                  float(traj.t[j + 1])))
        windows.append(_finish_window(traj, station, t_aos, t_los))
        k = j + 1
    return windows


def _finish_window(traj, station, t_aos, t_los):
    best_el, best_t = -90.0, t_aos
    t = t_aos
    while t <= t_los:
        el, _ = elevation_azimuth(station, _interp_ecef(traj, t))
        if el > best_el:
            best_el, best_t = el, t
        t += 1.0
    lat_before = ecef_to_geo(_interp_ecef(traj, max(best_t - 1.0, t_aos))).lat
    lat_after = ecef_to_geo(_interp_ecef(traj, min(best_t + 1.0, t_los))).lat
    direction = "ascending" if lat_after > lat_before else "descending"
    return PassWindow(
        aos=traj.epoch0.plus_seconds(t_aos),
        los=traj.epoch0.plus_seconds(t_los),
        duration=t_los - t_aos,
        max_elevation=best_el,
        direction=direction)


def revisit_report(passes) -> RevisitSummary:
    """Summarize a pass list: durations and the longest revisit gap.

    The gap between consecutive passes is measured start-to-start
    (AOS to AOS); max_gap is 0 when there are fewer than two passes.

    Raises:
        DomainError: If the pass list is empty.
    """
    passes = list(passes)
    if not passes:
        raise DomainError("cannot summarize an empty pass list")
    durations = [p.duration for p in passes]
    gaps = [(passes[k + 1].aos.jd - passes[k].aos.jd) * 86400.0
            for k in range(len(passes) - 1)]
    return RevisitSummary(
        count=len(passes),
        min_duration=min(durations),
        mean_duration=sum(durations) / len(durations),
        max_duration=max(durations),
        max_gap=max(gaps) if gaps else 0.0)
