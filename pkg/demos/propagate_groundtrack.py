# Propagate the reference orbit for a day, check the integrator against
# the closed-form solution, and draw the sub-satellite track.
import math

import numpy as np

from leosrp import (Figure, KeplerianElements, Series, angular_momentum,
                    elements_to_state, ground_track, orbital_period,
                    parse_epoch, propagate, render, specific_energy,
                    track_segments)

el0 = KeplerianElements(a=6928.18, e=0.0, i=math.radians(98.6),
                        raan=math.radians(7.0), argp=math.radians(180.0),
                        true_anomaly=0.0,
                        epoch=parse_epoch("2022-11-22T00:00:00"))

sv = elements_to_state(el0)
traj = propagate(sv, 86400.0, dt=10.0)
print(f"samples: {len(traj.r)}")

e0 = specific_energy(traj.r[0], traj.v[0])
h0 = np.linalg.norm(angular_momentum(traj.r[0], traj.v[0]))
e_drift = max(abs(specific_energy(r, v) - e0) for r, v in
              zip(traj.r, traj.v)) / abs(e0)
h_drift = max(abs(np.linalg.norm(angular_momentum(r, v)) - h0)
              for r, v in zip(traj.r, traj.v)) / h0
print(f"energy drift over 24 h: {e_drift:.2e} (relative)")
print(f"|h| drift over 24 h:    {h_drift:.2e} (relative)")

track = ground_track(traj)
lats = np.array([pt.lat for _, pt in track])
lons = np.array([pt.lon for _, pt in track])
print(f"peak latitude: {lats.max():.2f} deg "
      f"(expect 180 - 98.6 = {180.0 - 98.6:.2f})")

# successive ascending-node longitudes show the Earth turning under the orbit
crossings = []
for k in range(len(lats) - 1):
    if lats[k] < 0.0 <= lats[k + 1]:
        w = -lats[k] / (lats[k + 1] - lats[k])
        dlon = (lons[k + 1] - lons[k] + 180.0) % 360.0 - 180.0
        crossings.append(lons[k] + w * dlon)
print(f"revolutions in 24 h: {len(crossings)}")
period = orbital_period(el0.a)
print(f"mean westward shift per orbit: "
      f"{np.mean([(b - a + 180.0) % 360.0 - 180.0 for a, b in zip(crossings, crossings[1:])]):.2f} deg "
      f"(expect {-360.0 * period / 86164.0:.2f})")

series = [Series(xs=[pt.lon for _, pt in seg], ys=[pt.lat for _, pt in seg],
                 color="#1965b0") for seg in track_segments(track)]
fig = Figure(series=tuple(series), title="24 h ground track",
             x_label="longitude deg", y_label="latitude deg",
             x_range=(-180.0, 180.0), y_range=(-90.0, 90.0))
with open("demo_groundtrack.svg", "w") as fh:
    fh.write(render(fig))
print("wrote demo_groundtrack.svg")
