"""Step-size rules for (sub)gradient descent.

A rule maps the observations at iteration t (function value, squared
gradient norm) to a step size.  Every rule signals convergence by
returning ``None`` once the squared gradient norm drops below
``CONVERGED_GRAD_SQ``; stepping on a numerically vanished gradient is
meaningless for all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .objectives import GAP_TOLERANCE

# Below this squared gradient norm the iterate counts as stationary.
CONVERGED_GRAD_SQ = 1e-30

SCHEDULE_NAMES = ("polyak", "polyak-lb", "constant", "inv-t", "inv-sqrt-t")


class LowerBoundError(ValueError):
    """The reference value handed to a Polyak-type rule is not a lower bound."""


def _require_finite(value: float, name: str) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PolyakExact:
    """eta_t = (f(x_t) - f_star) / ||g_t||^2."""

    f_star: float

    def __post_init__(self):
        _require_finite(self.f_star, "f_star")


@dataclass(frozen=True)
class PolyakLowerBound:
    """eta_t = (f(x_t) - f_tilde) / (2 ||g_t||^2) for a lower bound f_tilde."""

    f_tilde: float

    def __post_init__(self):
        _require_finite(self.f_tilde, "f_tilde")


@dataclass(frozen=True)
class Constant:
    """eta_t = eta."""

    eta: float

    def __post_init__(self):
        if not self.eta > 0.0:
            raise ValueError("eta must be positive")
        _require_finite(self.eta, "eta")


@dataclass(frozen=True)
class InverseT:
    """eta_t = 1 / (alpha (t+1)), the classical strongly-convex schedule."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        _require_finite(self.alpha, "alpha")


@dataclass(frozen=True)
class InverseSqrtT:
    """eta_t = scale / sqrt(t+1), the classical nonsmooth-convex schedule."""

    scale: float

    def __post_init__(self):
        if not self.scale > 0.0:
            raise ValueError("scale must be positive")
        _require_finite(self.scale, "scale")


ScheduleRule = Union[PolyakExact, PolyakLowerBound, Constant, InverseT, InverseSqrtT]


def step_size(rule: ScheduleRule, t: int, f_value: float, grad_sq_norm: float):
    """Step size for iteration t, or None once the gradient has vanished.

    Polyak-type rules raise LowerBoundError when the observed value lies
    below their reference value by more than GAP_TOLERANCE; smaller
    negative gaps are rounding noise and clamp to a zero step.
    """
    if grad_sq_norm < 0.0:
        raise ValueError("grad_sq_norm must be nonnegative")
    if grad_sq_norm < CONVERGED_GRAD_SQ:
        return None
    if isinstance(rule, PolyakExact):
        gap = f_value - rule.f_star
        if gap < -GAP_TOLERANCE:
            raise LowerBoundError(
                f"f_star is not a lower bound: observed {f_value!r} < f_star {rule.f_star!r}"
            )
        return max(gap, 0.0) / grad_sq_norm
    if isinstance(rule, PolyakLowerBound):
        gap = f_value - rule.f_tilde
        if gap < -GAP_TOLERANCE:
            raise LowerBoundError(
                f"f_tilde exceeds observed value: observed {f_value!r} < f_tilde {rule.f_tilde!r}"
            )
        return max(gap, 0.0) / (2.0 * grad_sq_norm)
    if isinstance(rule, Constant):
        return rule.eta
    if isinstance(rule, InverseT):
        return 1.0 / (rule.alpha * (t + 1))
    if isinstance(rule, InverseSqrtT):
        return rule.scale / math.sqrt(t + 1.0)
    raise TypeError(f"unknown schedule rule: {rule!r}")


_RULE_BUILDERS = {
    "polyak": (PolyakExact, ("f_star",)),
    "polyak-lb": (PolyakLowerBound, ("f_tilde",)),
    "constant": (Constant, ("eta",)),
    "inv-t": (InverseT, ("alpha",)),
    "inv-sqrt-t": (InverseSqrtT, ("scale",)),
}


def rule_from_name(name: str, **params) -> ScheduleRule:
    """Build a rule from its command-line name and keyword parameters."""
    if name not in _RULE_BUILDERS:
        raise ValueError(f"unknown schedule {name!r}, expected one of {SCHEDULE_NAMES}")
    cls, wanted = _RULE_BUILDERS[name]
    stray = set(params) - set(wanted)
    if stray:
        raise ValueError(f"schedule {name!r} does not take {sorted(stray)}")
    missing = [key for key in wanted if key not in params]
    if missing:
        raise ValueError(f"schedule {name!r}: missing {', '.join(missing)}")
    return cls(**params)
