# Daily visibility schedule for three stations watching the same orbit,
# plus the size of the coverage cap each sees.
import math

from leosrp import (GeoPoint, GroundStation, KeplerianElements, cap_angle,
                    elements_to_state, find_passes, format_epoch, parse_epoch,
                    propagate, revisit_report, slant_range)

STATIONS = [
    ("patiala", 30.3398, 76.3869),
    ("srinagar", 34.0837, 74.7973),
    ("bengaluru", 12.9716, 77.5946),
]
MASK_DEG = 5.0

el0 = KeplerianElements(a=6928.18, e=0.0, i=math.radians(98.6),
                        raan=math.radians(7.0), argp=math.radians(180.0),
                        true_anomaly=0.0,
                        epoch=parse_epoch("2022-11-22T00:00:00"))

alt = el0.a - 6378.137
alpha, fraction = cap_angle(alt, MASK_DEG)
print(f"altitude {alt:.0f} km, mask {MASK_DEG} deg")
print(f"coverage cap half-angle: {alpha:.2f} deg "
      f"({100.0 * fraction:.2f}% of the sphere)")
print(f"slant range at the cap edge: {slant_range(el0.a, alpha):.0f} km\n")

traj = propagate(elements_to_state(el0), 86400.0, dt=10.0)

for name, lat, lon in STATIONS:
    station = GroundStation(GeoPoint(lat, lon), MASK_DEG, name)
    passes = find_passes(traj, station)
    print(f"{name} ({len(passes)} passes)")
    for p in passes:
        print(f"  {format_epoch(p.aos)}  {p.duration:6.1f} s  "
              f"max el {p.max_elevation:5.1f} deg  {p.direction}")
    rep = revisit_report(passes)
    print(f"  durations {rep.min_duration:.0f}..{rep.max_duration:.0f} s, "
          f"longest wait {rep.max_gap / 3600.0:.1f} h\n")
