"""Time evolution under the interpolated Hamiltonian.

Two engines integrate i d|psi>/dt = H(s(t)) |psi> from |alpha>:

* evolve_full carries the whole N-vector and applies, per step, the exact
  unitary of the piecewise-constant midpoint Hamiltonian (2x2 block via
  spectral decomposition, phase exp(-i dt) on the orthogonal complement).
* evolve_effective carries only the two coordinates in span{alpha, beta}
  (invariant under H(s)) and applies closed-form 2x2 rotations.

They share no step algebra, so their agreement is a real cross-check. Both
are exact per step; the only discretization error is s varying within a
step, hence fidelity converges ~dt^2 and 200 steps per unit time is plenty
(||H|| <= 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    BracketError,
    NumericalError,
    ScheduleError,
    StepSizeError,
    ValidationError,
)
from .hamiltonian import (
    ProjectorInterpolation,
    TwoLevelReduction,
    _require_coupled_pair,
    gap_values,
)
from .states import StateVector
from . import _kernels

DEFAULT_STEPS_PER_UNIT = 200
MAX_STABLE_DT = 0.1
NORM_DRIFT_LIMIT = 1e-9


class ScheduleKind(Enum):
    LINEAR = "linear"
    LOCAL_ADIABATIC = "local-adiabatic"


class Engine(Enum):
    FULL_SPACE = "full-space"
    EFFECTIVE_2D = "effective-2d"


@dataclass(frozen=True, eq=False)
class Schedule:
    """Monotone map t -> s with s(0) = 0 and s(T) = 1.

    Linear schedules are s = t/T exactly; local-adiabatic ones carry a
    sampled (t, s) table and interpolate it piecewise-linearly.
    """

    kind: ScheduleKind
    T: float
    epsilon: Optional[float] = None
    table: Optional[tuple[np.ndarray, np.ndarray]] = None

    def __post_init__(self):
        if not self.T > 0:
            raise ScheduleError(f"total time must be positive, got T={self.T}")
        if self.kind is ScheduleKind.LINEAR:
            if self.table is not None:
                raise ScheduleError("linear schedules take no table")
            return
        if self.table is None:
            raise ScheduleError("local-adiabatic schedules need a sampled (t, s) table")
        t, s = (np.ascontiguousarray(col, dtype=np.float64) for col in self.table)
        if t.shape != s.shape or t.ndim != 1 or t.size < 2:
            raise ScheduleError("schedule table must be two equal-length 1D columns")
        if t[0] != 0.0 or s[0] != 0.0 or s[-1] != 1.0 or abs(t[-1] - self.T) > 1e-9 * self.T:
            raise ScheduleError("schedule table must run from (0, 0) to (T, 1)")
        if np.any(np.diff(t) <= 0) or np.any(np.diff(s) < 0):
            raise ScheduleError("schedule table must be monotone in t and nondecreasing in s")
        t.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "table", (t, s))

    def s_at(self, t):
        """Evaluate s(t); accepts scalars or arrays."""
        if self.kind is ScheduleKind.LINEAR:
            out = np.asarray(t, dtype=np.float64) / self.T
        else:
            knots_t, knots_s = self.table
            out = np.interp(np.asarray(t, dtype=np.float64), knots_t, knots_s)
        return float(out) if out.ndim == 0 else out


def linear_schedule(T: float) -> Schedule:
    return Schedule(kind=ScheduleKind.LINEAR, T=float(T))


def build_local_schedule(
    h: ProjectorInterpolation, epsilon: float, grid_points: int = 8001
) -> Schedule:
    """Schedule that saturates the adiabatic ratio pointwise.

    Speed ds/dt = epsilon * g(s)^2 / coupling(s), so the instantaneous
    ratio |<dH/dt>| / g^2 equals epsilon everywhere; the total time comes
    from trapezoid integration of dt/ds over a fine s-grid. For targets
    with overlap c the closed form is T = sqrt(1 - c^2)/(epsilon * c),
    which grows like sqrt(N) when c = 1/sqrt(N).
    """
    if not 0.0 < epsilon < 1.0:
        raise ValidationError(f"epsilon must lie in (0, 1), got {epsilon}")
    tl = _require_coupled_pair(h)
    s = np.linspace(0.0, 1.0, grid_points)
    g2 = gap_values(h.c, s) ** 2
    slowness = np.array([tl.coupling(si) for si in s]) / (epsilon * g2)  # dt/ds
    t = np.concatenate(([0.0], np.cumsum(0.5 * (slowness[1:] + slowness[:-1]) * np.diff(s))))
    s = s.copy()
    s[-1] = 1.0
    return Schedule(
        kind=ScheduleKind.LOCAL_ADIABATIC, T=float(t[-1]), epsilon=float(epsilon), table=(t, s)
    )


def rescale_schedule(schedule: Schedule, T: float) -> Schedule:
    """Same s(t/T * T_old) profile, stretched or compressed to total time T."""
    if schedule.kind is ScheduleKind.LINEAR:
        return linear_schedule(T)
    knots_t, knots_s = schedule.table
    scaled = knots_t * (T / schedule.T)
    return Schedule(
        kind=schedule.kind, T=float(T), epsilon=schedule.epsilon, table=(scaled, knots_s)
    )


class TraceSample(NamedTuple):
    t: float
    s: float
    fidelity: float  # overlap-squared with the instantaneous ground state


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    final_state: StateVector
    fidelity: float
    min_gap_seen: float
    trace: tuple[TraceSample, ...]
    engine: Engine


def _resolve_steps(schedule: Schedule, steps: Optional[int]) -> tuple[int, float]:
    if steps is None:
        steps = max(1, math.ceil(DEFAULT_STEPS_PER_UNIT * schedule.T))
    if steps < 1:
        raise ValidationError(f"step count must be >= 1, got {steps}")
    dt = schedule.T / steps
    if dt > MAX_STABLE_DT * (1.0 + 1e-12):
        raise StepSizeError(
            f"dt = {dt} exceeds the stability budget {MAX_STABLE_DT} (||H|| <= 1); "
            f"use at least {math.ceil(schedule.T / MAX_STABLE_DT)} steps"
        )
    return steps, dt


def _check_norm(norm: float) -> None:
    if abs(norm - 1.0) > NORM_DRIFT_LIMIT:
        raise NumericalError(f"propagation lost unitarity: norm drifted to {norm}")


def evolve_full(
    h: ProjectorInterpolation,
    schedule: Schedule,
    steps: Optional[int] = None,
    trace_samples: int = 129,
) -> EvolutionResult:
    """Integrate in the full N-dimensional space. Returns the final state,
    its fidelity |<beta|psi(T)>|^2, the smallest gap crossed, and a trace of
    overlap with the instantaneous ground state."""
    tl = TwoLevelReduction(h)
    steps, dt = _resolve_steps(schedule, steps)
    s_mid, bounds, min_gap = _grid_and_gap(h, schedule, steps, dt, trace_samples)

    psi = h.alpha.amplitudes.copy()
    trace = []
    for j, k in enumerate(bounds):
        if j > 0:
            k_prev = bounds[j - 1]
            if tl.degenerate:
                _advance_degenerate(psi, tl, (k - k_prev) * dt)
            else:
                _kernels.run_full_steps(psi, tl.u1, tl.u2, tl.c, s_mid[k_prev:k], dt)
        t = k * dt
        s_here = schedule.s_at(t)
        _check_norm(float(np.linalg.norm(psi)))
        trace.append(TraceSample(t=float(t), s=float(s_here), fidelity=_ground_fid(tl, s_here, psi)))

    fidelity = float(abs(np.vdot(h.beta.amplitudes, psi)) ** 2)
    final = StateVector(psi / np.linalg.norm(psi))
    return EvolutionResult(
        final_state=final,
        fidelity=fidelity,
        min_gap_seen=min_gap,
        trace=tuple(trace),
        engine=Engine.FULL_SPACE,
    )


def evolve_effective(
    h: ProjectorInterpolation,
    schedule: Schedule,
    steps: Optional[int] = None,
    trace_samples: int = 129,
) -> EvolutionResult:
    """Integrate in the invariant 2D subspace; O(1) per step regardless of N.
    Fidelity agrees with evolve_full to well under 1e-8."""
    tl = TwoLevelReduction(h)
    steps, dt = _resolve_steps(schedule, steps)
    s_mid, bounds, min_gap = _grid_and_gap(h, schedule, steps, dt, trace_samples)

    pq = np.array([1.0 + 0.0j, 0.0j])
    trace = []
    for j, k in enumerate(bounds):
        if j > 0:
            k_prev = bounds[j - 1]
            if not tl.degenerate:
                _kernels.run_2d_steps(pq, tl.c, s_mid[k_prev:k], dt)
        t = k * dt
        s_here = schedule.s_at(t)
        _check_norm(float(np.hypot(abs(pq[0]), abs(pq[1]))))
        trace.append(
            TraceSample(t=float(t), s=float(s_here), fidelity=_ground_fid_2d(tl, s_here, pq))
        )

    fidelity = float(abs(tl.c * pq[0] + tl.w * pq[1]) ** 2)
    lifted = tl.lift(complex(pq[0]), complex(pq[1]))
    final = StateVector(lifted / np.linalg.norm(lifted))
    return EvolutionResult(
        final_state=final,
        fidelity=fidelity,
        min_gap_seen=min_gap,
        trace=tuple(trace),
        engine=Engine.EFFECTIVE_2D,
    )


def evolve(
    h: ProjectorInterpolation,
    schedule: Schedule,
    engine: Engine,
    steps: Optional[int] = None,
    trace_samples: int = 129,
) -> EvolutionResult:
    if engine is Engine.FULL_SPACE:
        return evolve_full(h, schedule, steps, trace_samples)
    return evolve_effective(h, schedule, steps, trace_samples)


def _grid_and_gap(h, schedule, steps, dt, trace_samples):
    s_mid = np.atleast_1d(
        np.asarray(schedule.s_at((np.arange(steps) + 0.5) * dt), dtype=np.float64)
    )
    if np.any(np.diff(s_mid) < -1e-12):
        raise ScheduleError("schedule is not monotone over the step grid")
    n_bounds = min(max(2, trace_samples), steps + 1)
    bounds = np.unique(np.round(np.linspace(0, steps, n_bounds)).astype(np.int64))
    s_all = np.concatenate(([schedule.s_at(0.0)], s_mid, [schedule.s_at(schedule.T)]))
    min_gap = float(np.min(gap_values(h.c, s_all)))
    return s_mid, bounds, min_gap


def _advance_degenerate(psi: np.ndarray, tl: TwoLevelReduction, span: float) -> None:
    # c = 1: H(s) = I - |alpha><alpha| for every s, so alpha keeps phase 1
    # and the complement accrues exp(-i * span)
    a1 = np.vdot(tl.u1, psi)
    ph = complex(math.cos(span), -math.sin(span))
    psi *= ph
    psi += (a1 - ph * a1) * tl.u1


def _ground_fid(tl: TwoLevelReduction, s: float, psi: np.ndarray) -> float:
    if tl.degenerate:
        return float(abs(np.vdot(tl.u1, psi)) ** 2)
    _, _, v0, _ = tl.eigensystem(s)
    a1, a2 = tl.project(psi)
    return float(abs(v0[0] * a1 + v0[1] * a2) ** 2)


def _ground_fid_2d(tl: TwoLevelReduction, s: float, pq: np.ndarray) -> float:
    if tl.degenerate:
        return float(abs(pq[0]) ** 2)
    _, _, v0, _ = tl.eigensystem(s)
    return float(abs(v0[0] * pq[0] + v0[1] * pq[1]) ** 2)


def minimal_time(
    h: ProjectorInterpolation,
    target_fidelity: float,
    schedule_kind: ScheduleKind = ScheduleKind.LINEAR,
    tol: float = 1e-2,
    *,
    engine: Engine = Engine.EFFECTIVE_2D,
    epsilon_ref: float = 0.1,
    t_max: float = 200.0,
    scan_dt: float = 0.5,
    settle_window: float = 15.0,
    steps_per_unit: int = DEFAULT_STEPS_PER_UNIT,
) -> float:
    """Smallest T whose fidelity reaches the target and stays there.

    The fidelity-vs-T curve oscillates, so plain bisection is ill-posed.
    Instead the curve is scanned on a scan_dt grid until settle_window of
    time has passed since the last below-target sample (the envelope has
    then cleared the target); bisection to tol runs inside the final
    below/above bracket. Raises BracketError if no such stable bracket
    exists below t_max. Local-adiabatic searches rescale the epsilon_ref
    profile in time.
    """
    if not 0.5 <= target_fidelity < 1.0:
        raise ValidationError(f"target fidelity must lie in [0.5, 1), got {target_fidelity}")
    if tol <= 0 or scan_dt <= 0:
        raise ValidationError("tol and scan_dt must be positive")

    if schedule_kind is ScheduleKind.LOCAL_ADIABATIC:
        reference = build_local_schedule(h, epsilon_ref)
    else:
        reference = None

    def make_schedule(T: float) -> Schedule:
        if reference is None:
            return linear_schedule(T)
        return rescale_schedule(reference, T)

    def fid_at(T: float) -> float:
        if T <= 0.0:
            return h.c * h.c  # sudden limit: the state never moves
        steps = max(1, math.ceil(steps_per_unit * T))
        return evolve(h, make_schedule(T), engine, steps=steps, trace_samples=2).fidelity

    last_below = None  # grid time of the most recent below-target sample
    k = 0
    while True:
        T_k = k * scan_dt
        if T_k > t_max + 1e-9:
            raise BracketError(
                f"fidelity did not stay >= {target_fidelity} for {settle_window} time units "
                f"below t_max={t_max}; raise t_max"
            )
        if fid_at(T_k) < target_fidelity:
            last_below = T_k
        settled_since = T_k - (last_below if last_below is not None else 0.0)
        if last_below is not None and settled_since >= settle_window:
            break
        if last_below is None and T_k >= settle_window:
            return 0.0
        k += 1

    lo, hi = last_below, last_below + scan_dt
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fid_at(mid) >= target_fidelity:
            hi = mid
        else:
            lo = mid
    return hi
