"""Experiment configuration: a TOML document of flat sections.

Grammar (all sections flat key = value; unknown sections or keys are
rejected):

    [objective]
    kind = "quadratic"        # quadratic | scaled-euclidean-norm |
                              # singular-quadratic | strongly-convex-plus-l1
    dimension = 20
    eigenvalues = [1.0, 2.0]  # quadratic kinds only; length == dimension
    scale = 1.0               # scaled-euclidean-norm only
    curvature = 2.0           # strongly-convex-plus-l1 only
    l1_weight = 1.0           # strongly-convex-plus-l1 only
    offset = 0.0              # optional; shifts f_star away from 0
    x_star = [0.0, 0.0]       # optional explicit minimizer, default zeros
    x_star_random = true      # optional; standard-normal draw from the seed

    [run]
    T = 1000
    x0 = [1.0, 1.0]           # explicit start point, or
    x0_radius = 1.0           # uniform draw in the ball around x_star
    seed = 0                  # optional uint64, default 0
    record_points = false     # optional

    [schedule]                # exactly one of [schedule] / [adaptive]
    name = "polyak"           # polyak | polyak-lb | constant | inv-t | inv-sqrt-t
    f_tilde = 0.0             # polyak-lb (required there)
    eta = 0.1                 # constant (required there)
    alpha = 1.0               # inv-t (defaults to the objective's alpha)
    scale = 0.5               # inv-sqrt-t (defaults to d0/(G*sqrt(T)))

    [adaptive]
    f_tilde0 = 0.0            # required: initial lower estimate of f_star
    epochs = 8                # optional explicit epoch count, or
    target = 1e-8             # optional accuracy target for the auto count

    [output]
    dir = "out"               # optional, default "out"
    svg = false               # optional chart emission
    audit_points = 200        # optional moduli-audit sample count

Randomness is drawn from a PCG64 generator seeded with [run] seed; the
draw order is x_star (if random), then x0 (if by radius), then the
moduli-audit sample points.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .objectives import KINDS
from .schedules import SCHEDULE_NAMES


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


_SECTIONS = ("objective", "run", "schedule", "adaptive", "output")
_REQUIRED = object()


@dataclass(frozen=True)
class ObjectiveSection:
    kind: str
    dimension: int
    eigenvalues: list[float] | None = None
    scale: float | None = None
    curvature: float | None = None
    l1_weight: float | None = None
    offset: float = 0.0
    x_star: list[float] | None = None
    x_star_random: bool = False


@dataclass(frozen=True)
class RunSection:
    T: int
    x0: list[float] | None = None
    x0_radius: float | None = None
    seed: int = 0
    record_points: bool = False


@dataclass(frozen=True)
class ScheduleSection:
    name: str
    f_tilde: float | None = None
    eta: float | None = None
    alpha: float | None = None
    scale: float | None = None


@dataclass(frozen=True)
class AdaptiveSection:
    f_tilde0: float
    epochs: int | None = None
    target: float | None = None


@dataclass(frozen=True)
class OutputSection:
    dir: str = "out"
    svg: bool = False
    audit_points: int = 200


@dataclass(frozen=True)
class ExperimentConfig:
    objective: ObjectiveSection
    run: RunSection
    schedule: ScheduleSection | None
    adaptive: AdaptiveSection | None
    output: OutputSection
    raw: dict = field(repr=False, default_factory=dict)


def _pop(section: dict, where: str, key: str, default=_REQUIRED):
    if key in section:
        return section.pop(key)
    if default is _REQUIRED:
        raise ConfigError(f"missing {key} in [{where}]")
    return default


def _pop_number(section, where, key, default=_REQUIRED, minimum=None):
    value = _pop(section, where, key, default)
    if value is default and default is not _REQUIRED:
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    value = float(value)
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key} must be >= {minimum}")
    return value


def _pop_int(section, where, key, default=_REQUIRED, minimum=None):
    value = _pop(section, where, key, default)
    if value is default and default is not _REQUIRED:
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key} must be >= {minimum}")
    return value


def _pop_bool(section, where, key, default=_REQUIRED):
    value = _pop(section, where, key, default)
    if value is default and default is not _REQUIRED:
        return value
    if not isinstance(value, bool):
        raise ConfigError(f"{where}.{key} must be a boolean, got {value!r}")
    return value


def _pop_str(section, where, key, default=_REQUIRED, choices=None):
    value = _pop(section, where, key, default)
    if value is default and default is not _REQUIRED:
        return value
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key} must be a string, got {value!r}")
    if choices is not None and value not in choices:
        raise ConfigError(f"{where}.{key} must be one of {choices}, got {value!r}")
    return value


def _pop_vector(section, where, key, default=_REQUIRED):
    value = _pop(section, where, key, default)
    if value is default and default is not _REQUIRED:
        return value
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}.{key} must be a nonempty array of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{where}.{key} must contain only numbers")
        out.append(float(item))
    return out


def _reject_unknown(section: dict, where: str) -> None:
    if section:
        names = ", ".join(sorted(section))
        raise ConfigError(f"unknown key(s) in [{where}]: {names}")


def _build_objective(raw: dict) -> ObjectiveSection:
    sec = dict(raw)
    kind = _pop_str(sec, "objective", "kind", choices=KINDS)
    dimension = _pop_int(sec, "objective", "dimension", minimum=1)
    eigenvalues = _pop_vector(sec, "objective", "eigenvalues", default=None)
    scale = _pop_number(sec, "objective", "scale", default=None)
    curvature = _pop_number(sec, "objective", "curvature", default=None)
    l1_weight = _pop_number(sec, "objective", "l1_weight", default=None)
    offset = _pop_number(sec, "objective", "offset", default=0.0)
    x_star = _pop_vector(sec, "objective", "x_star", default=None)
    x_star_random = _pop_bool(sec, "objective", "x_star_random", default=False)
    _reject_unknown(sec, "objective")
    if x_star is not None and x_star_random:
        raise ConfigError("objective.x_star and objective.x_star_random are mutually exclusive")
    if x_star is not None and len(x_star) != dimension:
        raise ConfigError("objective.x_star length must equal objective.dimension")
    return ObjectiveSection(
        kind=kind,
        dimension=dimension,
        eigenvalues=eigenvalues,
        scale=scale,
        curvature=curvature,
        l1_weight=l1_weight,
        offset=offset,
        x_star=x_star,
        x_star_random=x_star_random,
    )


def _build_run(raw: dict, dimension: int) -> RunSection:
    sec = dict(raw)
    T = _pop_int(sec, "run", "T", minimum=1)
    x0 = _pop_vector(sec, "run", "x0", default=None)
    x0_radius = _pop_number(sec, "run", "x0_radius", default=None)
    seed = _pop_int(sec, "run", "seed", default=0, minimum=0)
    record_points = _pop_bool(sec, "run", "record_points", default=False)
    _reject_unknown(sec, "run")
    if (x0 is None) == (x0_radius is None):
        raise ConfigError("exactly one of run.x0 and run.x0_radius is required")
    if x0 is not None and len(x0) != dimension:
        raise ConfigError("run.x0 length must equal objective.dimension")
    if x0_radius is not None and not x0_radius > 0.0:
        raise ConfigError("run.x0_radius must be positive")
    if seed >= 2**64:
        raise ConfigError("run.seed must fit in 64 unsigned bits")
    return RunSection(T=T, x0=x0, x0_radius=x0_radius, seed=seed, record_points=record_points)


_SCHEDULE_PARAMS = {
    "polyak": (),
    "polyak-lb": ("f_tilde",),
    "constant": ("eta",),
    "inv-t": ("alpha",),
    "inv-sqrt-t": ("scale",),
}

# parameters the harness can fill from objective metadata when omitted
_DEFAULTABLE = {"alpha", "scale"}


def _build_schedule(raw: dict) -> ScheduleSection:
    sec = dict(raw)
    name = _pop_str(sec, "schedule", "name", choices=SCHEDULE_NAMES)
    values = {}
    for key in ("f_tilde", "eta", "alpha", "scale"):
        values[key] = _pop_number(sec, "schedule", key, default=None)
    _reject_unknown(sec, "schedule")
    wanted = _SCHEDULE_PARAMS[name]
    stray = [k for k, v in values.items() if v is not None and k not in wanted]
    if stray:
        raise ConfigError(f"schedule.{stray[0]} does not apply to schedule {name!r}")
    for key in wanted:
        if values[key] is None and key not in _DEFAULTABLE:
            raise ConfigError(f"schedule {name!r}: missing {key}")
    return ScheduleSection(name=name, **values)


def _build_adaptive(raw: dict) -> AdaptiveSection:
    sec = dict(raw)
    f_tilde0 = _pop_number(sec, "adaptive", "f_tilde0")
    epochs = _pop_int(sec, "adaptive", "epochs", default=None, minimum=1)
    target = _pop_number(sec, "adaptive", "target", default=None)
    _reject_unknown(sec, "adaptive")
    if epochs is not None and target is not None:
        raise ConfigError("adaptive.epochs and adaptive.target are mutually exclusive")
    if target is not None and not target > 0.0:
        raise ConfigError("adaptive.target must be positive")
    return AdaptiveSection(f_tilde0=f_tilde0, epochs=epochs, target=target)


def _build_output(raw: dict) -> OutputSection:
    sec = dict(raw)
    out_dir = _pop_str(sec, "output", "dir", default="out")
    svg = _pop_bool(sec, "output", "svg", default=False)
    audit_points = _pop_int(sec, "output", "audit_points", default=200, minimum=0)
    _reject_unknown(sec, "output")
    return OutputSection(dir=out_dir, svg=svg, audit_points=audit_points)


def build_config(raw: dict) -> ExperimentConfig:
    """Validate a parsed TOML document into an ExperimentConfig."""
    unknown = set(raw) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")
    for name in _SECTIONS:
        if name in raw and not isinstance(raw[name], dict):
            raise ConfigError(f"[{name}] must be a section of key = value lines")
        if name in raw:
            for key, value in raw[name].items():
                if isinstance(value, dict):
                    raise ConfigError(f"nested tables are not allowed ({name}.{key})")
    if "objective" not in raw:
        raise ConfigError("missing [objective] section")
    if "run" not in raw:
        raise ConfigError("missing [run] section")

    objective = _build_objective(raw["objective"])
    run = _build_run(raw["run"], objective.dimension)
    has_schedule = "schedule" in raw
    has_adaptive = "adaptive" in raw
    if has_schedule == has_adaptive:
        raise ConfigError("provide exactly one of [schedule] and [adaptive]")
    schedule = _build_schedule(raw["schedule"]) if has_schedule else None
    adaptive = _build_adaptive(raw["adaptive"]) if has_adaptive else None
    output = _build_output(raw.get("output", {}))
    return ExperimentConfig(
        objective=objective,
        run=run,
        schedule=schedule,
        adaptive=adaptive,
        output=output,
        raw=raw,
    )


def parse_config(text: str) -> ExperimentConfig:
    """Parse a TOML config document; syntax errors keep their line numbers."""
    try:
        raw = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc
    return build_config(raw)


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def apply_overrides(raw: dict, overrides: dict) -> dict:
    """Merge dotted-key overrides (section.key -> value) into a raw document."""
    merged = {name: dict(section) for name, section in raw.items() if isinstance(section, dict)}
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if not key:
            raise ConfigError(f"override {dotted!r} must look like section.key")
        merged.setdefault(section, {})[key] = value
    return merged
