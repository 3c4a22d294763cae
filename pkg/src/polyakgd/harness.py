"""Experiment harness: run a configured experiment, check every bound.

The harness turns an ExperimentConfig into artifacts on disk:

    trajectory.csv   per-step log (t, f, h, d, grad_sq_norm, eta)
    report.json      machine-readable report (config echo, bounds, audits)
    report.txt       human-readable rendering of the same report
    trajectory.svg   optional gap-vs-step chart

Randomness: one PCG64 generator seeded from [run] seed, drawn in the
fixed order x_star (if random), x0 (if by radius), moduli audit points.
Identical configs therefore produce byte-identical CSV files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bounds import (
    BoundParams,
    check_descent_condition,
    check_distance_recursion,
    check_geometric_contraction,
    check_moduli_inequalities,
    check_normalized_distance_decay,
    contraction_bound,
    polyak_bound,
)
from .config import (
    _DEFAULTABLE,
    _SCHEDULE_PARAMS,
    ConfigError,
    ExperimentConfig,
    ScheduleSection,
)
from .objectives import Objective, clamped_gap, make_objective
from .optimizer import (
    AdaptiveResult,
    RunConfig,
    RunResult,
    TrajectoryRecord,
    adaptive_polyak,
    epochs_for_gap,
    run_gd,
)
from .schedules import (
    Constant,
    InverseSqrtT,
    InverseT,
    PolyakExact,
    PolyakLowerBound,
    ScheduleRule,
)

CSV_HEADER = "t,f,h,d,grad_sq_norm,eta"

# sentinel strings used in JSON for non-finite metadata
INFINITE = "infinite"
UNBOUNDED = "unbounded-globally"
NOT_APPLICABLE = "not-applicable"

_MAX_REPORTED_VIOLATIONS = 10


def experiment_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_in_ball(rng: np.random.Generator, center: np.ndarray, radius: float) -> np.ndarray:
    """Uniform draw from the closed euclidean ball around ``center``."""
    direction = rng.standard_normal(center.size)
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        direction = np.zeros_like(center)
        direction[0] = 1.0
        norm = 1.0
    shrink = rng.random() ** (1.0 / center.size)
    return center + (radius * shrink / norm) * direction


def build_objective(config: ExperimentConfig, rng: np.random.Generator) -> Objective:
    sec = config.objective
    if sec.x_star_random:
        x_star = rng.standard_normal(sec.dimension)
    elif sec.x_star is not None:
        x_star = np.asarray(sec.x_star, dtype=float)
    else:
        x_star = None
    kwargs = {"offset": sec.offset, "x_star": x_star}
    if sec.eigenvalues is not None:
        kwargs["eigenvalues"] = sec.eigenvalues
    if sec.scale is not None:
        kwargs["scale"] = sec.scale
    if sec.curvature is not None:
        kwargs["curvature"] = sec.curvature
    if sec.l1_weight is not None:
        kwargs["l1_weight"] = sec.l1_weight
    try:
        return make_objective(sec.kind, sec.dimension, **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_start_point(
    config: ExperimentConfig, objective: Objective, rng: np.random.Generator
) -> np.ndarray:
    sec = config.run
    if sec.x0 is not None:
        x0 = np.asarray(sec.x0, dtype=float)
    else:
        x0 = sample_in_ball(rng, objective.x_star, sec.x0_radius)
    return x0


def prepare_problem(config: ExperimentConfig):
    """Objective, start point, and generator for one config.

    Draw order: x_star (if random), x0 (if by radius); the generator is
    returned for any further draws (audit sample points).  Objectives with
    a flat optimum set are re-anchored to the start point so distance
    metadata measures the gap the iterates can actually close.
    """
    rng = experiment_rng(config.run.seed)
    objective = build_objective(config, rng)
    x0 = build_start_point(config, objective, rng)
    objective = objective.bind_start(x0)
    return objective, x0, rng


def resolve_rule(
    config: ExperimentConfig, objective: Objective, d0: float, G_run: float
) -> ScheduleRule:
    """Build the schedule rule, filling defaultable parameters from metadata."""
    sec = config.schedule
    if sec is None:
        raise ConfigError("config has no [schedule] section")
    if sec.name == "polyak":
        return PolyakExact(f_star=objective.f_star)
    if sec.name == "polyak-lb":
        return PolyakLowerBound(f_tilde=sec.f_tilde)
    if sec.name == "constant":
        return Constant(eta=sec.eta)
    if sec.name == "inv-t":
        alpha = sec.alpha if sec.alpha is not None else objective.alpha
        if not alpha > 0.0:
            raise ConfigError(
                "schedule 'inv-t': alpha not given and the objective is not strongly convex"
            )
        return InverseT(alpha=alpha)
    if sec.name == "inv-sqrt-t":
        scale = sec.scale
        if scale is None:
            if not (math.isfinite(G_run) and G_run > 0.0 and d0 > 0.0):
                raise ConfigError("schedule 'inv-sqrt-t': scale not given and no default applies")
            scale = d0 / (G_run * math.sqrt(config.run.T))
        return InverseSqrtT(scale=scale)
    raise ConfigError(f"unknown schedule name {sec.name!r}")


# --- report ---------------------------------------------------------------


@dataclass
class ExperimentReport:
    """Everything an experiment produced, ready for JSON or text rendering."""

    config: dict
    objective: dict
    run: dict
    bounds: dict
    compliance: dict | None
    audits: dict
    adaptive: dict | None = None
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.compliance is not None and not self.compliance["passed"]:
            return False
        return all(entry["passed"] for entry in self.audits.values())


def _scalar(value, inf_word=INFINITE):
    """JSON-safe scalar: floats stay floats, non-finite become sentinels."""
    if value is None:
        return NOT_APPLICABLE
    if isinstance(value, float):
        if math.isinf(value):
            return inf_word
        if math.isnan(value):
            return NOT_APPLICABLE
    return value


def _bound_dict(report) -> dict:
    out = {case: _scalar(term) for case, term in report.terms().items()}
    out["bound_value"] = _scalar(report.bound_value)
    out["active_case"] = report.active_case
    return out


def _violations_dict(violations) -> dict:
    head = [
        {"t": v.t, "inequality": v.inequality, "lhs": v.lhs, "rhs": v.rhs}
        for v in violations[:_MAX_REPORTED_VIOLATIONS]
    ]
    return {"violation_count": len(violations), "violations": head}


def bound_tables(params: BoundParams) -> dict:
    """Both bound tables for one parameter set (contraction uses params.gamma)."""
    return {
        "exact_step": _bound_dict(polyak_bound(params)),
        "contraction": _bound_dict(contraction_bound(params)),
        "gamma": params.gamma,
    }


def _min_gap(trajectory) -> float:
    return min(rec.h for rec in trajectory if rec.h is not None)


def _audit_entries(
    objective: Objective,
    result: RunResult,
    rule: ScheduleRule,
    audit_points: list[np.ndarray],
    epoch_trajectories: list[list[TrajectoryRecord]] | None = None,
) -> dict:
    """Run every audit that applies to this schedule; keyed by audit name."""
    audits: dict = {}
    source = epoch_trajectories if epoch_trajectories is not None else [result.trajectory]
    source = [traj for traj in source if len(traj) >= 2]

    steps = 0
    violations = []
    for traj in source:
        steps += len(traj) - 1
        violations.extend(check_distance_recursion(traj))
    audits["distance_recursion"] = {
        "passed": not violations,
        "steps_checked": steps,
        **_violations_dict(violations),
    }

    gamma = None
    if isinstance(rule, PolyakExact):
        gamma = 1.0
    elif isinstance(rule, PolyakLowerBound) or epoch_trajectories is not None:
        gamma = 0.5
    if gamma is not None:
        steps = 0
        refinements = 0
        violations = []
        for traj in source:
            audit = check_descent_condition(traj, gamma=gamma)
            steps += audit.steps_checked
            refinements += len(audit.refinement_steps)
            violations.extend(audit.violations)
        audits["descent_condition"] = {
            "passed": not violations,
            "gamma": gamma,
            "steps_checked": steps,
            "refinement_steps": refinements,
            **_violations_dict(violations),
        }

    if isinstance(rule, PolyakExact) and objective.alpha > 0.0:
        G_run = objective.gradient_bound(result.trajectory[0].d)
        if math.isfinite(G_run) and G_run > 0.0:
            audit = check_normalized_distance_decay(
                result.trajectory, alpha=objective.alpha, G=G_run, gamma=1.0
            )
            audits["normalized_distance"] = {
                "passed": audit.passed,
                "coefficient": audit.coefficient,
                "a0": audit.a0,
                **_violations_dict(audit.violations),
            }
        # The per-step factor (1 - gamma*alpha/beta) outruns what the descent
        # condition alone can certify.  On the quadratic family (the only
        # finite-beta kinds here) one step contracts d^2 by exactly
        # 3*h^2/(gsn*d^2) >= 3*alpha*beta/(alpha+beta)^2, which dominates
        # alpha/beta iff alpha <= (sqrt(3)-1)*beta, so the audit is only
        # wired inside that regime.  At alpha near beta the factor would
        # demand more contraction than a correct run produces.
        provable = objective.alpha <= (math.sqrt(3.0) - 1.0) * objective.beta
        if math.isfinite(objective.beta) and provable:
            violations = check_geometric_contraction(
                result.trajectory, alpha=objective.alpha, beta=objective.beta, gamma=1.0
            )
            audits["geometric_contraction"] = {
                "passed": not violations,
                "factor": 1.0 - objective.alpha / objective.beta,
                **_violations_dict(violations),
            }

    if audit_points:
        audit = check_moduli_inequalities(objective, audit_points)
        audits["moduli"] = {
            "passed": audit.passed,
            "samples": audit.samples,
            "checked": list(audit.checked),
            "skipped": list(audit.skipped),
            **_violations_dict(audit.violations),
        }
    return audits


def _bound_slack(bound: float) -> float:
    return 1e-12 + 1e-9 * abs(bound)


def _compliance(reference: str, bound_value: float, achieved: float) -> dict:
    passed = achieved <= bound_value + _bound_slack(bound_value)
    return {
        "reference": reference,
        "bound_value": _scalar(bound_value),
        "achieved": achieved,
        "margin": _scalar(bound_value - achieved),
        "passed": bool(passed),
    }


def _objective_dict(objective: Objective, d0: float, G_run: float) -> dict:
    return {
        "kind": objective.kind,
        "dimension": objective.dimension,
        "alpha": objective.alpha,
        "beta": _scalar(objective.beta),
        "lipschitz_G": _scalar(objective.lipschitz_G, UNBOUNDED),
        "f_star": objective.f_star,
        "d0": d0,
        "G_run": _scalar(G_run, UNBOUNDED),
    }


def run_experiment(config: ExperimentConfig, out_dir=None) -> tuple[ExperimentReport, RunResult]:
    """Execute one configured experiment and write its artifacts.

    Returns the report plus the raw run result (the best epoch's run for
    adaptive experiments).
    """
    objective, x0, rng = prepare_problem(config)
    d0 = objective.distance_to_opt(x0)
    G_run = objective.gradient_bound(d0)
    T = config.run.T

    adaptive_info = None
    if config.adaptive is not None:
        sec = config.adaptive
        params = BoundParams(
            G=G_run,
            d0=d0,
            alpha=objective.alpha,
            beta=objective.beta,
            T=T,
            gamma=0.5,
        )
        half = contraction_bound(params)
        if sec.epochs is not None:
            K = sec.epochs
        else:
            gap0 = objective.value(x0) - sec.f_tilde0
            target = sec.target if sec.target is not None else half.bound_value
            if not (math.isfinite(gap0) and gap0 > 0.0):
                K = 1
            elif not (math.isfinite(target) and target > 0.0):
                raise ConfigError("adaptive.target is required when the bound is not finite")
            else:
                K = epochs_for_gap(gap0, max(target, 1e-30))
        result = adaptive_polyak(
            objective,
            x0,
            T=T,
            K=K,
            f_tilde_0=sec.f_tilde0,
            record_points=config.run.record_points,
        )
        rule = PolyakLowerBound(f_tilde=sec.f_tilde0)
        schedule_desc = {"name": "adaptive", "f_tilde0": sec.f_tilde0, "epochs": K}
        epoch_trajs = [ep.trajectory for ep in result.epochs]
        best_gap = clamped_gap(result.best_value, objective.f_star)
        compliance = None
        if math.isfinite(half.bound_value):
            compliance = _compliance(
                "2x contraction(gamma=0.5)", 2.0 * half.bound_value, best_gap
            )
        adaptive_info = {
            "epochs_run": len(result.epochs),
            "epochs_requested": K,
            "f_tilde_history": list(result.f_tilde_history),
            "best_epoch": result.best_epoch,
            "lower_bound_violated": result.lower_bound_violated,
            "total_steps": sum(ep.steps_taken for ep in result.epochs),
        }
    else:
        rule = resolve_rule(config, objective, d0, G_run)
        result = run_gd(
            objective,
            RunConfig(T=T, schedule=rule, x0=x0, record_points=config.run.record_points),
        )
        schedule_desc = {"name": config.schedule.name, **_rule_params(rule)}
        epoch_trajs = None
        best_gap = clamped_gap(result.best_value, objective.f_star)
        compliance = None
        if isinstance(rule, (PolyakExact, PolyakLowerBound)):
            gamma = 1.0 if isinstance(rule, PolyakExact) else 0.5
            params = BoundParams(
                G=G_run, d0=d0, alpha=objective.alpha, beta=objective.beta, T=T, gamma=gamma
            )
            bound = contraction_bound(params)
            if math.isfinite(bound.bound_value):
                compliance = _compliance(
                    f"contraction(gamma={_trim(gamma)})", bound.bound_value, _min_gap(result.trajectory)
                )

    params_full = BoundParams(
        G=G_run,
        d0=d0,
        alpha=objective.alpha,
        beta=objective.beta,
        T=T,
        gamma=1.0 if config.adaptive is None and isinstance(rule, PolyakExact) else 0.5,
    )
    audit_points = [
        objective.x_star + max(d0, 1.0) * rng.standard_normal(objective.dimension)
        for _ in range(config.output.audit_points)
    ]
    audits = _audit_entries(objective, result, rule, audit_points, epoch_trajs)

    report = ExperimentReport(
        config=config.raw,
        objective=_objective_dict(objective, d0, G_run),
        run={
            "schedule": schedule_desc,
            "T": T,
            "seed": config.run.seed,
            "steps_taken": result.steps_taken,
            "stopped_early": result.stopped_early,
            "best_value": result.best_value,
            "best_gap": best_gap,
            "best_index": result.best_index,
        },
        bounds=bound_tables(params_full),
        compliance=compliance,
        audits=audits,
        adaptive=adaptive_info,
    )

    target_dir = Path(out_dir) if out_dir is not None else Path(config.output.dir)
    target_dir.mkdir(parents=True, exist_ok=True)
    report.artifacts["trajectory_csv"] = str(target_dir / "trajectory.csv")
    if config.output.svg:
        report.artifacts["trajectory_svg"] = str(target_dir / "trajectory.svg")
    report.artifacts["report_json"] = str(target_dir / "report.json")
    report.artifacts["report_txt"] = str(target_dir / "report.txt")
    emit_trajectory_csv(result.trajectory, report.artifacts["trajectory_csv"])
    if config.output.svg:
        trajectory_svg(result.trajectory, report.artifacts["trajectory_svg"])
    Path(report.artifacts["report_json"]).write_text(report_json(report), newline="\n")
    Path(report.artifacts["report_txt"]).write_text(report_text(report), newline="\n")
    return report, result


def _rule_params(rule: ScheduleRule) -> dict:
    out = {}
    for name in getattr(rule, "__dataclass_fields__", {}):
        out[name] = getattr(rule, name)
    return out


def _trim(value: float) -> str:
    text = f"{value:g}"
    return text


# --- CSV ------------------------------------------------------------------


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def emit_trajectory_csv(trajectory, path) -> None:
    """Write the per-step log; floats at .17g so read-back is exact."""
    lines = [CSV_HEADER]
    for rec in trajectory:
        lines.append(
            ",".join(
                (
                    str(rec.t),
                    _fmt(rec.f),
                    _fmt(rec.h),
                    _fmt(rec.d),
                    _fmt(rec.grad_sq_norm),
                    _fmt(rec.eta),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def read_trajectory_csv(path) -> list[TrajectoryRecord]:
    text = Path(path).read_text()
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"bad trajectory csv header: expected {CSV_HEADER!r}")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != 6:
            raise ValueError(f"bad trajectory csv row: {line!r}")
        records.append(
            TrajectoryRecord(
                t=int(cells[0]),
                f=float(cells[1]),
                h=float(cells[2]) if cells[2] else None,
                d=float(cells[3]) if cells[3] else None,
                grad_sq_norm=float(cells[4]),
                eta=float(cells[5]),
            )
        )
    return records


# --- report rendering -----------------------------------------------------


def report_json(report: ExperimentReport) -> str:
    payload = {
        "config": report.config,
        "objective": report.objective,
        "run": report.run,
        "bounds": report.bounds,
        "compliance": report.compliance if report.compliance is not None else NOT_APPLICABLE,
        "audits": report.audits,
        "adaptive": report.adaptive if report.adaptive is not None else NOT_APPLICABLE,
        "passed": report.passed,
        "artifacts": report.artifacts,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_report(report: ExperimentReport, path, fmt: str = "json") -> None:
    if fmt == "json":
        Path(path).write_text(report_json(report), newline="\n")
    elif fmt == "text":
        Path(path).write_text(report_text(report), newline="\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}; choose json or text")


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def report_text(report: ExperimentReport) -> str:
    obj = report.objective
    run = report.run
    lines = []
    lines.append("experiment report")
    lines.append("=" * 17)
    lines.append(
        "objective: {kind} dim={dimension} alpha={alpha} beta={beta} "
        "G={lipschitz_G} f_star={f_star:.17g}".format(
            kind=obj["kind"],
            dimension=obj["dimension"],
            alpha=_fmt_cell(obj["alpha"]),
            beta=_fmt_cell(obj["beta"]),
            lipschitz_G=_fmt_cell(obj["lipschitz_G"]),
            f_star=obj["f_star"],
        )
    )
    lines.append(
        "start: d0={d0:.17g} G_run={G_run}".format(d0=obj["d0"], G_run=_fmt_cell(obj["G_run"]))
    )
    sched = dict(run["schedule"])
    name = sched.pop("name")
    extras = " ".join(f"{k}={_fmt_cell(v)}" for k, v in sched.items())
    lines.append(
        f"run: schedule={name}{' ' + extras if extras else ''} T={run['T']} "
        f"seed={run['seed']} steps={run['steps_taken']} stopped_early={run['stopped_early']}"
    )
    lines.append(
        "best: f={best:.17g} gap={gap:.6g} at t={idx}".format(
            best=run["best_value"], gap=run["best_gap"], idx=run["best_index"]
        )
    )
    lines.append("")
    lines.append(f"bound tables (gamma={_fmt_cell(report.bounds['gamma'])})")
    header = f"{'case':<18}{'exact_step':>18}{'contraction':>18}"
    lines.append(header)
    exact = report.bounds["exact_step"]
    contr = report.bounds["contraction"]
    for case in ("convex", "smooth", "strongly_convex", "well_conditioned"):
        lines.append(f"{case:<18}{_fmt_cell(exact[case]):>18}{_fmt_cell(contr[case]):>18}")
    lines.append(
        f"{'bound_value':<18}{_fmt_cell(exact['bound_value']):>18}"
        f"{_fmt_cell(contr['bound_value']):>18}"
    )
    lines.append(f"{'active_case':<18}{exact['active_case']:>18}{contr['active_case']:>18}")
    lines.append("")
    if report.compliance is None:
        lines.append("compliance: not-applicable (no guarantee for this schedule)")
    else:
        comp = report.compliance
        verdict = "PASS" if comp["passed"] else "FAIL"
        lines.append(
            f"compliance: {verdict} margin={_fmt_cell(comp['margin'])} "
            f"(achieved {_fmt_cell(comp['achieved'])} vs {comp['reference']} "
            f"bound {_fmt_cell(comp['bound_value'])})"
        )
    lines.append("")
    lines.append("audits")
    for name, entry in report.audits.items():
        verdict = "PASS" if entry["passed"] else "FAIL"
        details = []
        for key in ("steps_checked", "refinement_steps", "samples", "gamma", "a0", "factor"):
            if key in entry:
                details.append(f"{key}={_fmt_cell(entry[key])}")
        if entry["violation_count"]:
            details.append(f"violations={entry['violation_count']}")
        lines.append(f"  {name}: {verdict}" + (f" ({', '.join(details)})" if details else ""))
        for violation in entry["violations"]:
            lines.append(
                "    t={t} {inequality}: lhs={lhs:.17g} rhs={rhs:.17g}".format(**violation)
            )
    if report.adaptive is not None:
        lines.append("")
        ada = report.adaptive
        lines.append(
            "adaptive: epochs={run}/{req} best_epoch={best} total_steps={steps} "
            "lower_bound_violated={flag}".format(
                run=ada["epochs_run"],
                req=ada["epochs_requested"],
                best=ada["best_epoch"],
                steps=ada["total_steps"],
                flag=ada["lower_bound_violated"],
            )
        )
        history = ", ".join(f"{v:.6g}" for v in ada["f_tilde_history"])
        lines.append(f"  f_tilde history: {history}")
    lines.append("")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


# --- SVG ------------------------------------------------------------------


def trajectory_svg(trajectory, path, width: int = 640, height: int = 400) -> None:
    """Self-contained chart of the optimality gap (log10) against the step."""
    margin = 50.0
    pts = [(rec.t, rec.h) for rec in trajectory if rec.h is not None and rec.h > 0.0]
    body = []
    if pts:
        ts = [p[0] for p in pts]
        hs = [math.log10(p[1]) for p in pts]
        t_lo, t_hi = min(ts), max(ts)
        h_lo, h_hi = min(hs), max(hs)
        if t_hi == t_lo:
            t_hi = t_lo + 1
        if h_hi == h_lo:
            h_hi = h_lo + 1

        def sx(t):
            return margin + (t - t_lo) / (t_hi - t_lo) * (width - 2 * margin)

        def sy(h):
            return height - margin - (h - h_lo) / (h_hi - h_lo) * (height - 2 * margin)

        coords = " ".join(f"{sx(t):.2f},{sy(h):.2f}" for t, h in zip(ts, hs))
        body.append(
            f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{coords}"/>'
        )
        body.append(
            f'<text x="{margin}" y="{height - margin + 30:.0f}" font-size="12">t={t_lo}</text>'
        )
        body.append(
            f'<text x="{width - margin:.0f}" y="{height - margin + 30:.0f}" '
            f'font-size="12" text-anchor="end">t={t_hi}</text>'
        )
        body.append(
            f'<text x="{margin - 8:.0f}" y="{margin:.0f}" font-size="12" '
            f'text-anchor="end">1e{h_hi:.1f}</text>'
        )
        body.append(
            f'<text x="{margin - 8:.0f}" y="{height - margin:.0f}" font-size="12" '
            f'text-anchor="end">1e{h_lo:.1f}</text>'
        )
    else:
        body.append(
            f'<text x="{width / 2:.0f}" y="{height / 2:.0f}" font-size="14" '
            f'text-anchor="middle">gap reached zero at every recorded step</text>'
        )
    axes = (
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="#444"/>'
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="#444"/>'
    )
    label = (
        f'<text x="{width / 2:.0f}" y="20" font-size="13" text-anchor="middle">'
        "optimality gap h_t (log scale) vs step t</text>"
    )
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
        f'<rect width="{width}" height="{height}" fill="white"/>'
        f"{label}{axes}{''.join(body)}</svg>\n"
    )
    Path(path).write_text(svg, newline="\n")


# --- schedule comparison ---------------------------------------------------


def compare_schedules(
    config: ExperimentConfig, names: list[str]
) -> list[dict]:
    """Run several schedules from the same start point; one row per schedule."""
    objective, x0, _ = prepare_problem(config)
    d0 = objective.distance_to_opt(x0)
    G_run = objective.gradient_bound(d0)
    base = config.schedule
    rows = []
    for name in names:
        if name not in _SCHEDULE_PARAMS:
            raise ConfigError(f"unknown schedule name {name!r}")
        sec_kwargs = {"name": name}
        if base is not None:
            for key in ("f_tilde", "eta", "alpha", "scale"):
                value = getattr(base, key)
                if value is not None and key in _SCHEDULE_PARAMS[name]:
                    sec_kwargs[key] = value
        for key in _SCHEDULE_PARAMS.get(name, ()):
            if key not in sec_kwargs and key not in _DEFAULTABLE:
                if name == "polyak-lb":
                    # a schedule comparison treats the known optimum as the estimate
                    sec_kwargs[key] = objective.f_star
                elif name == "constant" and math.isfinite(objective.beta):
                    # classical baseline step for a smooth objective
                    sec_kwargs[key] = 1.0 / objective.beta
                else:
                    raise ConfigError(f"schedule {name!r} needs {key} in [schedule] to compare")
        trial = ExperimentConfig(
            objective=config.objective,
            run=config.run,
            schedule=ScheduleSection(**sec_kwargs),
            adaptive=None,
            output=config.output,
            raw=config.raw,
        )
        rule = resolve_rule(trial, objective, d0, G_run)
        result = run_gd(
            objective, RunConfig(T=config.run.T, schedule=rule, x0=x0)
        )
        rows.append(
            {
                "schedule": name,
                "best_value": result.best_value,
                "best_gap": clamped_gap(result.best_value, objective.f_star),
                "final_gap": result.trajectory[-1].h,
                "steps_taken": result.steps_taken,
                "stopped_early": result.stopped_early,
            }
        )
    return rows


def comparison_text(rows: list[dict]) -> str:
    header = f"{'schedule':<14}{'best_gap':>14}{'final_gap':>14}{'steps':>8}{'early':>7}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row['schedule']:<14}{row['best_gap']:>14.6g}"
            f"{row['final_gap']:>14.6g}{row['steps_taken']:>8}"
            f"{str(row['stopped_early']):>7}"
        )
    return "\n".join(lines) + "\n"


# --- verification suite ----------------------------------------------------

VERIFY_REGIMES = ("convex", "smooth", "strongly-convex", "well-conditioned")


def _check(lines: list[str], name: str, ok: bool, detail: str = "") -> bool:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    lines.append(f"{verdict} {name}{suffix}")
    return ok


def _audits_clean(audits: dict) -> bool:
    return all(entry["passed"] for entry in audits.values())


def _verify_run(
    lines: list[str],
    label: str,
    objective: Objective,
    x0: np.ndarray,
    rule: ScheduleRule,
    T: int,
    gamma: float,
    rng: np.random.Generator,
    points: int,
) -> bool:
    result = run_gd(objective, RunConfig(T=T, schedule=rule, x0=x0))
    d0 = objective.distance_to_opt(x0)
    G_run = objective.gradient_bound(d0)
    audit_points = [
        objective.x_star + max(d0, 1.0) * rng.standard_normal(objective.dimension)
        for _ in range(points)
    ]
    audits = _audit_entries(objective, result, rule, audit_points)
    ok = True
    for name, entry in audits.items():
        ok &= _check(
            lines,
            f"{label}/{name}",
            entry["passed"],
            f"violations={entry['violation_count']}",
        )
    params = BoundParams(
        G=G_run, d0=d0, alpha=objective.alpha, beta=objective.beta, T=T, gamma=gamma
    )
    bound = contraction_bound(params)
    if math.isfinite(bound.bound_value):
        achieved = _min_gap(result.trajectory)
        comp = _compliance(f"contraction(gamma={_trim(gamma)})", bound.bound_value, achieved)
        ok &= _check(
            lines,
            f"{label}/compliance",
            comp["passed"],
            f"achieved={achieved:.3e} bound={bound.bound_value:.3e}",
        )
    return ok


def verify_suite(regime: str = "all", seed: int = 20250815, points: int = 1000):
    """Run the canonical objective per regime and audit every guarantee.

    Returns (all_passed, printable lines).
    """
    if regime != "all" and regime not in VERIFY_REGIMES:
        raise ConfigError(f"unknown regime {regime!r}; choose from {('all',) + VERIFY_REGIMES}")
    selected = VERIFY_REGIMES if regime == "all" else (regime,)
    rng = experiment_rng(seed)
    lines: list[str] = []
    ok = True

    if "convex" in selected:
        obj = make_objective("scaled-euclidean-norm", 10, scale=1.5, offset=2.0)
        x0 = obj.x_star + 3.0 * _unit(rng, 10)
        ok &= _verify_run(
            lines, "convex/polyak", obj, x0, PolyakExact(f_star=obj.f_star), 400, 1.0, rng, points
        )
        ok &= _verify_run(
            lines,
            "convex/polyak-lb",
            obj,
            x0,
            PolyakLowerBound(f_tilde=obj.f_star),
            400,
            0.5,
            rng,
            points,
        )

    if "smooth" in selected:
        obj = make_objective(
            "singular-quadratic", 6, eigenvalues=[0.0, 0.0, 1.0, 2.0, 4.0, 8.0], offset=1.0
        )
        x0 = obj.x_star + 2.0 * _unit(rng, 6)
        obj = obj.bind_start(x0)
        ok &= _verify_run(
            lines, "smooth/polyak", obj, x0, PolyakExact(f_star=obj.f_star), 300, 1.0, rng, points
        )
        ok &= _verify_run(
            lines,
            "smooth/polyak-lb",
            obj,
            x0,
            PolyakLowerBound(f_tilde=obj.f_star),
            300,
            0.5,
            rng,
            points,
        )

    if "strongly-convex" in selected:
        obj = make_objective("strongly-convex-plus-l1", 8, curvature=2.0, l1_weight=1.0)
        x0 = obj.x_star + 2.0 * _unit(rng, 8)
        ok &= _verify_run(
            lines,
            "strongly-convex/polyak",
            obj,
            x0,
            PolyakExact(f_star=obj.f_star),
            600,
            1.0,
            rng,
            points,
        )
        ok &= _verify_run(
            lines,
            "strongly-convex/polyak-lb",
            obj,
            x0,
            PolyakLowerBound(f_tilde=obj.f_star),
            600,
            0.5,
            rng,
            points,
        )

    if "well-conditioned" in selected:
        eigs = list(np.linspace(1.0, 10.0, 20))
        obj = make_objective("quadratic", 20, eigenvalues=eigs, offset=5.0)
        x0 = obj.x_star + 2.0 * _unit(rng, 20)
        ok &= _verify_run(
            lines,
            "well-conditioned/polyak",
            obj,
            x0,
            PolyakExact(f_star=obj.f_star),
            400,
            1.0,
            rng,
            points,
        )
        ok &= _verify_run(
            lines,
            "well-conditioned/polyak-lb",
            obj,
            x0,
            PolyakLowerBound(f_tilde=obj.f_star),
            400,
            0.5,
            rng,
            points,
        )
        # adaptive end to end: estimates climb, best gap within twice the bound
        T, K = 60, 24
        result = adaptive_polyak(obj, x0, T=T, K=K, f_tilde_0=obj.f_star - 8.0)
        d0 = obj.distance_to_opt(x0)
        params = BoundParams(
            G=obj.gradient_bound(d0), d0=d0, alpha=obj.alpha, beta=obj.beta, T=T, gamma=0.5
        )
        half = contraction_bound(params).bound_value
        gap = clamped_gap(result.best_value, obj.f_star)
        ok &= _check(
            lines,
            "well-conditioned/adaptive-compliance",
            gap <= 2.0 * half + _bound_slack(2.0 * half),
            f"gap={gap:.3e} 2*bound={2.0 * half:.3e}",
        )
        history = result.f_tilde_history
        monotone = all(
            later >= earlier - 1e-12 for earlier, later in zip(history, history[1:])
        )
        ok &= _check(
            lines,
            "well-conditioned/adaptive-estimates",
            monotone and not result.lower_bound_violated,
            f"estimates={len(history)}",
        )

    lines.append(f"verify: {'all checks passed' if ok else 'FAILURES PRESENT'}")
    return ok, lines


def _unit(rng: np.random.Generator, dimension: int) -> np.ndarray:
    v = rng.standard_normal(dimension)
    return v / float(np.linalg.norm(v))
