"""Worst-case suboptimality bounds and per-step trajectory audits.

Two bound tables cover four problem regimes (convex with bounded
subgradients, smooth, strongly convex, and both moduli finite):

* ``polyak_bound``     guarantees for the exact Polyak step;
* ``contraction_bound`` guarantees for any run whose steps satisfy the
  descent condition  d_{t+1}^2 <= d_t^2 - gamma h_t^2 / ||g_t||^2.

The audits check, step by step, the inequalities those guarantees rest
on, so that a passing run certifies the bound rather than merely agreeing
with it.  All inequality checks allow additive slack 1e-12 plus a 1e-9
relative term for rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .optimizer import TrajectoryRecord

CASES = ("convex", "smooth", "strongly_convex", "well_conditioned")


@dataclass(frozen=True)
class BoundParams:
    """Inputs shared by both bound tables.

    alpha = 0 or beta = inf drop the terms that need them.  G and d0 may
    be zero for the degenerate start-at-optimum run, where every
    applicable term collapses to zero.
    """

    G: float
    d0: float
    alpha: float = 0.0
    beta: float = math.inf
    T: int = 1
    gamma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.G) and self.G >= 0.0):
            raise ValueError("G must be finite and nonnegative")
        if not (math.isfinite(self.d0) and self.d0 >= 0.0):
            raise ValueError("d0 must be finite and nonnegative")
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise ValueError("alpha must be finite and nonnegative")
        if not self.beta > 0.0:
            raise ValueError("beta must be positive (inf allowed)")
        if self.alpha > self.beta:
            raise ValueError("alpha cannot exceed beta")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound table; None marks a term whose modulus is missing."""

    term_convex: float | None
    term_smooth: float | None
    term_strongly_convex: float | None
    term_well_conditioned: float | None
    bound_value: float
    active_case: str

    def terms(self) -> dict[str, float | None]:
        return {
            "convex": self.term_convex,
            "smooth": self.term_smooth,
            "strongly_convex": self.term_strongly_convex,
            "well_conditioned": self.term_well_conditioned,
        }


def _assemble(terms: dict[str, float | None]) -> BoundReport:
    applicable = {k: v for k, v in terms.items() if v is not None}
    bound = min(applicable.values())
    active = next(k for k in CASES if applicable.get(k) == bound)
    return BoundReport(
        term_convex=terms["convex"],
        term_smooth=terms["smooth"],
        term_strongly_convex=terms["strongly_convex"],
        term_well_conditioned=terms["well_conditioned"],
        bound_value=bound,
        active_case=active,
    )


def contraction_bound(params: BoundParams) -> BoundReport:
    """min-h guarantee after T steps satisfying the gamma-descent condition."""
    p = params
    gT = p.gamma * p.T
    smooth_ok = math.isfinite(p.beta)
    strong_ok = p.alpha > 0.0
    terms = {
        "convex": p.G * p.d0 / math.sqrt(gT),
        "smooth": 2.0 * p.beta * p.d0**2 / gT if smooth_ok else None,
        "strongly_convex": p.G**2 / (gT * p.alpha) if strong_ok else None,
        "well_conditioned": (
            p.beta * p.d0**2 * (1.0 - p.gamma * p.alpha / p.beta) ** p.T
            if smooth_ok and strong_ok
            else None
        ),
    }
    return _assemble(terms)


def polyak_bound(params: BoundParams) -> BoundReport:
    """min-h guarantee after T exact Polyak steps (gamma plays no role)."""
    p = params
    smooth_ok = math.isfinite(p.beta)
    strong_ok = p.alpha > 0.0
    terms = {
        "convex": p.G * p.d0 / math.sqrt(p.T),
        "smooth": p.beta * p.d0**2 / p.T if smooth_ok else None,
        "strongly_convex": 2.0 * p.G**2 / (p.alpha * p.T) if strong_ok else None,
        "well_conditioned": (
            p.beta * p.d0**2 * (1.0 - p.alpha / (2.0 * p.beta)) ** p.T
            if smooth_ok and strong_ok
            else None
        ),
    }
    return _assemble(terms)


# ---------------------------------------------------------------------- audits


@dataclass(frozen=True)
class Violation:
    """One failed inequality: lhs should not have exceeded rhs."""

    t: int
    inequality: str
    lhs: float
    rhs: float

    @property
    def excess(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class DescentAudit:
    gamma: float
    steps_checked: int
    violations: list[Violation]
    # steps whose eta exceeded h/||g||^2; a lower-bound rule only takes such
    # a step when its reference value sits well below the optimal value, so
    # these certify room for refinement and are excluded from the audit.
    refinement_steps: list[int]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NormalizedDistanceAudit:
    """Audit of a_t = coefficient * d_t^2 against 1/(t+1) and its recursion."""

    coefficient: float
    a0: float
    violations: list[Violation]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class ModuliAudit:
    checked: tuple[str, ...]
    skipped: tuple[str, ...]
    samples: int
    violations: list[Violation]

    @property
    def passed(self) -> bool:
        return not self.violations


def _slack(scale: float) -> float:
    return 1e-12 + 1e-9 * abs(scale)


def _step_pairs(trajectory: list[TrajectoryRecord], need_h: bool = True):
    """Consecutive record pairs; every pair corresponds to one executed step."""
    for prev, cur in zip(trajectory, trajectory[1:]):
        if prev.d is None or cur.d is None or (need_h and prev.h is None):
            raise ValueError("audit needs h and d on every trajectory record")
        yield prev, cur


def check_distance_recursion(trajectory: list[TrajectoryRecord]) -> list[Violation]:
    """Audit d_{t+1}^2 <= d_t^2 - 2 eta h + eta^2 ||g||^2 on every step.

    This inequality holds for any step size on a convex objective, so a
    violation indicates broken metadata or a broken gradient.
    """
    violations = []
    for prev, cur in _step_pairs(trajectory):
        rhs = prev.d**2 - 2.0 * prev.eta * prev.h + prev.eta**2 * prev.grad_sq_norm
        lhs = cur.d**2
        if lhs > rhs + 1e-9 * (1.0 + prev.d**2):
            violations.append(Violation(prev.t, "distance_recursion", lhs, rhs))
    return violations


def check_descent_condition(
    trajectory: list[TrajectoryRecord], gamma: float
) -> DescentAudit:
    """Audit d_{t+1}^2 <= d_t^2 - gamma h_t^2/||g_t||^2 on qualifying steps.

    Steps with eta > h/||g||^2 are collected in refinement_steps instead of
    being audited; see DescentAudit.
    """
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must lie in (0, 1]")
    violations = []
    refinement = []
    checked = 0
    for prev, cur in _step_pairs(trajectory):
        ratio = prev.h / prev.grad_sq_norm
        if prev.eta > ratio * (1.0 + 1e-9) + 1e-12:
            refinement.append(prev.t)
            continue
        checked += 1
        rhs = prev.d**2 - gamma * prev.h**2 / prev.grad_sq_norm
        lhs = cur.d**2
        if lhs > rhs + _slack(1.0 + prev.d**2):
            violations.append(Violation(prev.t, "descent_condition", lhs, rhs))
    return DescentAudit(
        gamma=gamma,
        steps_checked=checked,
        violations=violations,
        refinement_steps=refinement,
    )


def check_normalized_distance_decay(
    trajectory: list[TrajectoryRecord],
    alpha: float,
    G: float,
    gamma: float = 1.0,
) -> NormalizedDistanceAudit:
    """Audit the normalized squared distance a_t = gamma alpha^2 d_t^2/(4 G^2).

    For a strongly convex run satisfying the gamma-descent condition with
    gradient norms at most G, a_t obeys a_{t+1} <= a_t (1 - a_t) and hence
    the harmonic envelope a_t <= 1/(t+1).
    """
    if not alpha > 0.0:
        raise ValueError("alpha must be positive for this audit")
    if not G > 0.0:
        raise ValueError("G must be positive for this audit")
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must lie in (0, 1]")
    coefficient = gamma * alpha**2 / (4.0 * G**2)

    violations = []
    a_values = []
    for rec in trajectory:
        if rec.d is None:
            raise ValueError("audit needs d on every trajectory record")
        a = coefficient * rec.d**2
        a_values.append(a)
        envelope = 1.0 / (rec.t + 1)
        if a > envelope + _slack(1.0):
            violations.append(Violation(rec.t, "harmonic_envelope", a, envelope))
    for t, (a, a_next) in enumerate(zip(a_values, a_values[1:])):
        cap = a * (1.0 - a)
        if a_next > cap + _slack(1.0):
            violations.append(Violation(t, "contraction_recursion", a_next, cap))

    a0 = a_values[0] if a_values else 0.0
    return NormalizedDistanceAudit(coefficient=coefficient, a0=a0, violations=violations)


def check_geometric_contraction(
    trajectory: list[TrajectoryRecord],
    alpha: float,
    beta: float,
    gamma: float = 1.0,
) -> list[Violation]:
    """Audit the per-step factor d_{t+1}^2 <= d_t^2 (1 - gamma alpha/beta)."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive for this audit")
    if not (math.isfinite(beta) and beta > 0.0):
        raise ValueError("beta must be finite and positive for this audit")
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must lie in (0, 1]")
    factor = 1.0 - gamma * alpha / beta
    violations = []
    for prev, cur in _step_pairs(trajectory, need_h=False):
        rhs = prev.d**2 * factor
        lhs = cur.d**2
        if lhs > rhs + _slack(1.0 + prev.d**2):
            violations.append(Violation(prev.t, "geometric_contraction", lhs, rhs))
    return violations


_MODULI_FAMILIES = (
    "strong_convexity_lower",
    "smoothness_upper",
    "smoothness_gradient_lower",
    "strong_convexity_gradient_upper",
)


def check_moduli_inequalities(objective, points) -> ModuliAudit:
    """Check the value/distance/gradient inequalities the moduli induce.

    At each sample x with h = f(x) - f_star, d = ||x - x_star|| and
    g = subgradient(x):

      strong_convexity_lower          alpha/2 d^2        <= h
      smoothness_upper                h                  <= beta/2 d^2
      smoothness_gradient_lower       ||g||^2/(2 beta)   <= h
      strong_convexity_gradient_upper h                  <= ||g||^2/(2 alpha)

    Families whose modulus is unavailable are reported as skipped.
    """
    strong_ok = objective.alpha > 0.0
    smooth_ok = math.isfinite(objective.beta)
    checked = tuple(
        name
        for name, ok in zip(_MODULI_FAMILIES, (strong_ok, smooth_ok, smooth_ok, strong_ok))
        if ok
    )
    skipped = tuple(name for name in _MODULI_FAMILIES if name not in checked)

    violations = []
    count = 0
    for i, x in enumerate(points):
        count += 1
        h = objective.suboptimality(x)
        d2 = objective.distance_to_opt(x) ** 2
        g = objective.subgradient(x)
        g2 = float(g @ g)
        pairs = {
            "strong_convexity_lower": (0.5 * objective.alpha * d2, h) if strong_ok else None,
            "smoothness_upper": (h, 0.5 * objective.beta * d2) if smooth_ok else None,
            "smoothness_gradient_lower": (g2 / (2.0 * objective.beta), h) if smooth_ok else None,
            "strong_convexity_gradient_upper": (h, g2 / (2.0 * objective.alpha)) if strong_ok else None,
        }
        for name, pair in pairs.items():
            if pair is None:
                continue
            lhs, rhs = pair
            if lhs > rhs + _slack(max(1.0, abs(lhs), abs(rhs))):
                violations.append(Violation(i, name, lhs, rhs))
    return ModuliAudit(checked=checked, skipped=skipped, samples=count, violations=violations)
