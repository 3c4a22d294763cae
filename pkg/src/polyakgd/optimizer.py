"""Subgradient descent driver with full trajectory records.

``run_gd`` executes one run under any schedule rule and records, per
iterate, the value, suboptimality, distance to the optimum, squared
gradient norm and the step taken.  ``adaptive_polyak`` wraps repeated
lower-bound runs that refine an optimal-value estimate by midpoint
updates.  Everything here is deterministic: the same inputs produce
bit-identical trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .objectives import Objective, clamped_gap
from .schedules import LowerBoundError, PolyakLowerBound, ScheduleRule, step_size

Vector = np.ndarray


@dataclass(frozen=True, eq=False)
class RunConfig:
    """One descent run: horizon, rule, start point.

    record_points keeps a copy of every iterate; scalars are always kept.
    """

    T: int
    schedule: ScheduleRule
    x0: Vector
    record_points: bool = False

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        x0 = np.asarray(self.x0, dtype=np.float64)
        if x0.ndim != 1:
            raise ValueError("x0 must be a 1-D vector")
        object.__setattr__(self, "x0", x0)


@dataclass(frozen=True)
class TrajectoryRecord:
    """Scalars observed at one iterate.

    eta is the step taken FROM this iterate; it is 0 on the final record
    of a run, which has no outgoing step.  h and d are None only when the
    objective metadata needed to compute them is unavailable.
    """

    t: int
    f: float
    h: float | None
    d: float | None
    grad_sq_norm: float
    eta: float


@dataclass(kw_only=True)
class RunResult:
    best_point: Vector
    best_value: float
    best_index: int
    trajectory: list[TrajectoryRecord]
    steps_taken: int
    stopped_early: bool
    points: list[Vector] | None = None


@dataclass(kw_only=True)
class AdaptiveResult(RunResult):
    """Aggregate of all refinement epochs.

    trajectory/best_index refer to the epoch that produced the best point
    (empty when no epoch completed); steps_taken sums over epochs.
    """

    epochs: list[RunResult] = field(default_factory=list)
    f_tilde_history: list[float] = field(default_factory=list)
    best_epoch: int = -1
    lower_bound_violated: bool = False


def gd_step(x: Vector, grad: Vector, eta: float) -> Vector:
    """One descent update: x - eta * grad."""
    x = np.asarray(x, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if x.shape != grad.shape:
        raise ValueError(f"shape mismatch: x {x.shape} vs grad {grad.shape}")
    return x - eta * grad


def run_gd(objective: Objective, config: RunConfig) -> RunResult:
    """Run subgradient descent for config.T steps (or until stationary).

    The final iterate is evaluated and recorded too, so the best point is
    the minimum over T+1 candidates.  Schedule errors propagate with the
    iteration index attached.
    """
    x = np.array(config.x0, dtype=np.float64)
    if x.shape != (objective.dimension,):
        raise ValueError(
            f"x0 has shape {x.shape}, expected ({objective.dimension},)"
        )

    records: list[TrajectoryRecord] = []
    points: list[Vector] | None = [] if config.record_points else None
    best_point = x.copy()
    best_value = math.inf
    best_index = 0
    stopped_early = False

    for t in range(config.T + 1):
        f = objective.value(x)
        g = objective.subgradient(x)
        gsn = float(np.dot(g, g))
        h = clamped_gap(f, objective.f_star)
        d = float(np.linalg.norm(x - objective.x_star))
        if points is not None:
            points.append(x.copy())
        if f < best_value:
            best_value = f
            best_point = x.copy()
            best_index = t

        if t == config.T:
            records.append(TrajectoryRecord(t, f, h, d, gsn, 0.0))
            break
        try:
            eta = step_size(config.schedule, t, f, gsn)
        except LowerBoundError as exc:
            raise type(exc)(f"at iteration {t}: {exc}") from exc
        if eta is None:
            records.append(TrajectoryRecord(t, f, h, d, gsn, 0.0))
            stopped_early = True
            break
        records.append(TrajectoryRecord(t, f, h, d, gsn, float(eta)))
        x = gd_step(x, g, eta)

    return RunResult(
        best_point=best_point,
        best_value=best_value,
        best_index=best_index,
        trajectory=records,
        steps_taken=len(records) - 1,
        stopped_early=stopped_early,
        points=points,
    )


def epochs_for_gap(initial_gap: float, target: float) -> int:
    """Halvings needed to bring initial_gap at or below target (at least 1)."""
    if not initial_gap > 0.0:
        raise ValueError("initial_gap must be positive")
    if not target > 0.0:
        raise ValueError("target must be positive")
    return max(1, math.ceil(math.log2(initial_gap / target)))


def adaptive_polyak(
    objective: Objective,
    x0,
    T: int,
    K: int,
    f_tilde_0: float,
    record_points: bool = False,
) -> AdaptiveResult:
    """K epochs of lower-bound descent, refining the value estimate.

    Every epoch restarts from x0 with the current estimate f_tilde and runs
    T lower-bound steps; afterwards the estimate moves to the midpoint of
    the epoch's best value and the old estimate.  The returned best point is
    the best seen across all epochs (x0 included).  If an epoch observes a
    value below its estimate the scheme aborts, returns the best so far and
    sets lower_bound_violated.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    x0 = np.asarray(x0, dtype=np.float64)

    f_tilde = float(f_tilde_0)
    history = [f_tilde]
    epochs: list[RunResult] = []
    best_point = x0.copy()
    best_value = objective.value(x0)
    best_epoch = -1
    best_index = 0
    violated = False
    steps = 0
    any_stationary = False

    for k in range(K):
        config = RunConfig(
            T=T,
            schedule=PolyakLowerBound(f_tilde),
            x0=x0,
            record_points=record_points,
        )
        try:
            epoch = run_gd(objective, config)
        except LowerBoundError:
            violated = True
            break
        epochs.append(epoch)
        steps += epoch.steps_taken
        any_stationary = any_stationary or epoch.stopped_early
        if epoch.best_value < best_value:
            best_value = epoch.best_value
            best_point = epoch.best_point
            best_epoch = k
            best_index = epoch.best_index
        f_tilde = 0.5 * (epoch.best_value + f_tilde)
        history.append(f_tilde)

    trajectory = epochs[best_epoch].trajectory if best_epoch >= 0 else []
    points = epochs[best_epoch].points if best_epoch >= 0 else None
    return AdaptiveResult(
        best_point=best_point,
        best_value=best_value,
        best_index=best_index,
        trajectory=trajectory,
        steps_taken=steps,
        stopped_early=any_stationary,
        points=points,
        epochs=epochs,
        f_tilde_history=history,
        best_epoch=best_epoch,
        lower_bound_violated=violated,
    )
