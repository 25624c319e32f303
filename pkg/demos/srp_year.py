# Radiation-pressure acceleration on a small craft over a full year.
# The annual Sun-distance cycle modulates the magnitude by about 7%.
import math

import numpy as np

from leosrp import (Figure, KeplerianElements, Series, SrpConfig,
                    analytic_sun_table, km_s2_to_km_day2, parse_epoch, render,
                    srp_year_series, two_body_position)

el0 = KeplerianElements(a=6928.18, e=0.0, i=math.radians(98.6),
                        raan=math.radians(7.0), argp=math.radians(180.0),
                        true_anomaly=0.0,
                        epoch=parse_epoch("2022-11-22T00:00:00"))

cfg = SrpConfig()  # Cr 1.3, 1 m^2, 15 kg
print(f"Cr = {cfg.cr:.2f}, A/M = {cfg.area_to_mass:.4f} m^2/kg")

table = analytic_sun_table(el0.epoch.jd, el0.epoch.jd + 366.0, step_days=1.0)

# force the craft lit to isolate the distance effect, then add the shadow
lit = srp_year_series(table, two_body_position(el0), SrpConfig(nu_override=1))
mags = np.array([s.magnitude for s in lit])
dists = np.array([s.sun_distance for s in lit])
print(f"\nalways-lit magnitudes, {len(lit)} daily samples:")
print(f"  max/min ratio: {mags.max() / mags.min():.4f}")
print(f"  strongest on day {int(np.argmax(mags))} "
      f"(Sun at {dists[np.argmax(mags)] / 1.495978707e8:.4f} AU)")
print(f"  in km/day^2: {km_s2_to_km_day2(mags.min()):.3f}"
      f" .. {km_s2_to_km_day2(mags.max()):.3f}")

shadowed = srp_year_series(table, two_body_position(el0), cfg)
dark = sum(1 for s in shadowed if s.nu == 0)
print(f"\nwith the cylinder shadow: {dark}/{len(shadowed)} daily samples "
      "caught the craft eclipsed")

days = np.arange(len(mags), dtype=float)
fig = Figure(
    series=(Series(xs=days, ys=mags * 1e10, color="#dc050c",
                   label="|a| 1e-10 km/s^2"),),
    title="radiation-pressure magnitude over one year",
    x_label="day", y_label="|a| 1e-10 km/s^2")
with open("demo_srp_year.svg", "w") as fh:
    fh.write(render(fig))
print("wrote demo_srp_year.svg")
