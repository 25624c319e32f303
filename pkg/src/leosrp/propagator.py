"""Fixed-step RK4 propagation of two-body motion plus optional perturbation.

The integrator is the classical fourth-order Runge-Kutta scheme on the
(r, v) state, with a fixed step and an optional final partial step so the
requested duration is hit exactly.  A perturbation hook, when given, is
called as accel = hook(r, v, epoch) and its km/s^2 result is added to the
central-body term inside every stage evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOrbitError, DomainError
from .kepler import StateVector
from .timeframe import CONSTANTS, Epoch


def two_body_accel(r, mu: float = CONSTANTS.mu_earth) -> np.ndarray:
    """Central-body acceleration -mu * r / |r|^3, km/s^2.

    Raises:
        DegenerateOrbitError: If |r| is zero.
    """
    r = np.asarray(r, dtype=float)
    rn = float(np.linalg.norm(r))
    if rn == 0.0:
        raise DegenerateOrbitError("two-body acceleration singular at |r| = 0")
    return (-mu / rn ** 3) * r


def _rk4_core(r0, v0, h, accel, t0):
    """One classical RK4 stage evaluation; accel takes (r, v, t_abs)."""
    a1 = accel(r0, v0, t0)
    v1 = v0 + 0.5 * h * a1
    a2 = accel(r0 + 0.5 * h * v0, v1, t0 + 0.5 * h)
    v2 = v0 + 0.5 * h * a2
    a3 = accel(r0 + 0.5 * h * v1, v2, t0 + 0.5 * h)
    v3 = v0 + h * a3
    a4 = accel(r0 + h * v2, v3, t0 + h)
    r_new = r0 + (h / 6.0) * (v0 + 2.0 * v1 + 2.0 * v2 + v3)
    v_new = v0 + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    return r_new, v_new


def rk4_step(state: StateVector, dt: float, accel) -> StateVector:
    """Advance one classical RK4 step.

    Args:
        state: State at the start of the step.
        dt: Step size, seconds.
        accel: Callable accel(r, v, t) -> km/s^2 array; t is seconds from
            the start of the step.

    Returns:
        StateVector at state.epoch + dt.
    """
    r_new, v_new = _rk4_core(state.r, state.v, dt, accel, 0.0)
    return StateVector(r_new, v_new, state.epoch.plus_seconds(dt))


@dataclass
class Trajectory:
    """Uniformly sampled propagation output.

    Attributes:
        epoch0: Epoch of the first sample.
        t: Sample offsets from epoch0, seconds, shape (N,).
        r: Positions, km, shape (N, 3).
        v: Velocities, km/s, shape (N, 3).
        step: Nominal step, seconds (the final interval may be shorter).
        warnings: Notes attached during propagation (e.g. reentry).
    """

    epoch0: Epoch
    t: np.ndarray
    r: np.ndarray
    v: np.ndarray
    step: float
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.t)

    def state_at(self, k: int) -> StateVector:
        """StateVector for sample index k."""
        return StateVector(self.r[k], self.v[k],
                           self.epoch0.plus_seconds(float(self.t[k])))

    @property
    def samples(self) -> list[StateVector]:
        """All samples as StateVectors (materialized on demand)."""
        return [self.state_at(k) for k in range(len(self.t))]

    @property
    def jds(self) -> np.ndarray:
        """Julian dates of all samples."""
        return self.epoch0.jd + self.t / 86400.0


def propagate(state0: StateVector, duration: float, dt: float = 10.0,
              perturbation=None, mu: float = CONSTANTS.mu_earth) -> Trajectory:
    """Propagate a state for a duration with fixed-step RK4.

    Args:
        state0: Initial state.
        duration: Propagation span, seconds (> 0).
        dt: Step size, seconds (> 0); a shorter final step lands exactly on
            the duration when it does not divide evenly.
        perturbation: Optional hook accel(r, v, epoch) -> km/s^2 array,
            added to the two-body term.

    Returns:
        Trajectory sampled at every step boundary, including t = 0.  If any
        sample dips below the Earth radius a reentry warning is attached and
        propagation continues.

    Raises:
        DomainError: If duration or dt is not positive.
    """
    if not duration > 0.0:
        raise DomainError(f"duration must be positive, got {duration}")
    if not dt > 0.0:
        raise DomainError(f"step must be positive, got {dt}")

    n_full = int(duration / dt + 1e-9)
    remainder = duration - n_full * dt
    steps = [dt] * n_full
    if remainder > 1e-9 * max(1.0, duration):
        steps.append(remainder)

    n_samp = len(steps) + 1
    t = np.empty(n_samp)
    r = np.empty((n_samp, 3))
    v = np.empty((n_samp, 3))
    t[0], r[0], v[0] = 0.0, state0.r, state0.v

    epoch0 = state0.epoch
    if perturbation is None:
        def accel_at(rr, vv, t_abs):
            return two_body_accel(rr, mu)
    else:
        def accel_at(rr, vv, t_abs):
            return two_body_accel(rr, mu) + perturbation(
                rr, vv, epoch0.plus_seconds(t_abs))

    reentry_at = None
    t_now = 0.0
    r_now, v_now = r[0].copy(), v[0].copy()
    for k, h in enumerate(steps, start=1):
        r_now, v_now = _rk4_core(r_now, v_now, h, accel_at, t_now)
        t_now += h
        t[k], r[k], v[k] = t_now, r_now, v_now
        if reentry_at is None and np.linalg.norm(r_now) < CONSTANTS.r_earth:
            reentry_at = t_now

    notes = ()
    if reentry_at is not None:
        notes = (f"reentry: |r| < r_earth from t = {reentry_at:.1f} s",)
    return Trajectory(epoch0=epoch0, t=t, r=r, v=v, step=dt, warnings=notes)


def specific_energy(r, v, mu: float = CONSTANTS.mu_earth) -> float:
    """Orbital specific energy v^2/2 - mu/|r|, km^2/s^2."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    rn = float(np.linalg.norm(r))
    if rn == 0.0:
        raise DegenerateOrbitError("specific energy singular at |r| = 0")
    return 0.5 * float(np.dot(v, v)) - mu / rn


def angular_momentum(r, v) -> np.ndarray:
    """Specific angular momentum r x v, km^2/s."""
    return np.cross(np.asarray(r, dtype=float), np.asarray(v, dtype=float))
