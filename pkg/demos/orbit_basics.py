# Circular-orbit quantities across the LEO altitude band, then one
# element/state round trip to show the conversion machinery.
import math

import numpy as np

from leosrp import (KeplerianElements, circular_velocity, elements_to_state,
                    orbital_period, orbits_per_day, parse_epoch,
                    state_to_elements)

R_EARTH = 6378.137

print("alt km   v km/s   period min   revs/day")
for alt in (300, 400, 550, 800, 1200):
    a = R_EARTH + alt
    v = circular_velocity(a)
    t = orbital_period(a) / 60.0
    q = orbits_per_day(a)
    print(f"{alt:6d}   {v:6.4f}   {t:10.2f}   {q:8d}")

# the reference orbit used throughout: 550 km sun-synchronous shell
a0 = R_EARTH + 550.043
print(f"\nreference a = {a0:.2f} km")
print(f"v_circ      = {circular_velocity(a0):.4f} km/s")
print(f"period      = {orbital_period(a0):.1f} s")
print(f"whole revs  = {orbits_per_day(a0)} per day")

el = KeplerianElements(a=a0, e=0.0, i=math.radians(98.6),
                       raan=math.radians(7.0), argp=math.radians(180.0),
                       true_anomaly=0.0,
                       epoch=parse_epoch("2022-11-22T00:00:00"))
sv = elements_to_state(el)
print(f"\nr = {np.array2string(sv.r, precision=3)} km")
print(f"v = {np.array2string(sv.v, precision=6)} km/s")

back = state_to_elements(sv)
print(f"round trip: a err {abs(back.a - el.a):.2e} km, "
      f"i err {abs(back.i - el.i):.2e} rad")
