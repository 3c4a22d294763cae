"""Synthetic convex objectives with exact optima and curvature metadata.

Each objective knows a minimizer ``x_star``, its value ``f_star``, a
strong-convexity modulus ``alpha`` (0 when absent), a smoothness modulus
``beta`` (``inf`` when nonsmooth) and a global subgradient-norm bound
``lipschitz_G`` (``inf`` when unbounded).  That is everything a Polyak-type
step-size rule or a rate audit needs, with no estimation involved.
"""

from __future__ import annotations

import math

import numpy as np

Vector = np.ndarray

# Value gaps above this magnitude below f_star indicate broken metadata;
# anything smaller is rounding noise and gets clamped to zero.
GAP_TOLERANCE = 1e-12

KINDS = (
    "quadratic",
    "scaled-euclidean-norm",
    "singular-quadratic",
    "strongly-convex-plus-l1",
)


def _as_vector(x, dimension: int, name: str = "x") -> Vector:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (dimension,):
        raise ValueError(f"{name} has shape {arr.shape}, expected ({dimension},)")
    return arr


def clamped_gap(f_value: float, f_star: float) -> float:
    """f_value - f_star with tiny negative round-off clamped to zero."""
    gap = f_value - f_star
    if gap < -GAP_TOLERANCE:
        raise ValueError(
            f"invalid f_star metadata: observed value {f_value!r} lies below "
            f"f_star {f_star!r} by more than {GAP_TOLERANCE}"
        )
    return max(gap, 0.0)


class Objective:
    """Base class for the synthetic suite.

    Subclasses set the metadata attributes in ``__init__`` and implement
    ``value`` and ``subgradient``.  ``subgradient`` must return an actual
    subgradient everywhere; at kinks we return the minimal-norm choice.
    """

    kind: str
    dimension: int
    x_star: Vector
    f_star: float
    alpha: float
    beta: float
    lipschitz_G: float

    def value(self, x) -> float:
        raise NotImplementedError

    def subgradient(self, x) -> Vector:
        raise NotImplementedError

    def suboptimality(self, x) -> float:
        """f(x) - f_star, clamped at zero; raises if metadata is inconsistent."""
        return clamped_gap(self.value(x), self.f_star)

    def distance_to_opt(self, x) -> float:
        return float(np.linalg.norm(_as_vector(x, self.dimension) - self.x_star))

    def gradient_bound(self, radius: float) -> float:
        """Bound on ||subgradient|| over the ball of this radius around x_star."""
        return self.lipschitz_G

    def kink_distance(self, x) -> float:
        """Distance from x to the nearest nondifferentiable point (inf if smooth)."""
        return math.inf

    def bind_start(self, x0) -> "Objective":
        """Specialize metadata to a start point.

        Kinds whose optimum is a single point return self unchanged.  Kinds
        with a flat optimum set replace x_star by the orthogonal projection
        of x0 onto that set, so distance metadata measures the distance the
        iterates can actually close.
        """
        return self

    def __repr__(self):
        return (
            f"{type(self).__name__}(kind={self.kind!r}, dimension={self.dimension}, "
            f"alpha={self.alpha}, beta={self.beta}, f_star={self.f_star})"
        )


class Quadratic(Objective):
    """f(x) = 0.5 * sum_i eig_i (x - x_star)_i^2 + offset with all eig_i > 0."""

    kind = "quadratic"

    def __init__(self, eigenvalues, x_star=None, offset: float = 0.0):
        eigs = np.asarray(eigenvalues, dtype=np.float64)
        if eigs.ndim != 1 or eigs.size == 0:
            raise ValueError("eigenvalues must be a nonempty 1-D sequence")
        if not np.all(eigs > 0.0):
            raise ValueError("quadratic eigenvalues must all be positive")
        self.eigenvalues = eigs
        self.dimension = int(eigs.size)
        self.x_star = (
            np.zeros(self.dimension)
            if x_star is None
            else _as_vector(x_star, self.dimension, "x_star").copy()
        )
        self.offset = float(offset)
        self.f_star = self.offset
        self.alpha = float(eigs.min())
        self.beta = float(eigs.max())
        self.lipschitz_G = math.inf

    def value(self, x) -> float:
        u = _as_vector(x, self.dimension) - self.x_star
        return float(0.5 * np.dot(self.eigenvalues * u, u) + self.offset)

    def subgradient(self, x) -> Vector:
        u = _as_vector(x, self.dimension) - self.x_star
        return self.eigenvalues * u

    def gradient_bound(self, radius: float) -> float:
        return self.beta * radius


class ScaledNorm(Objective):
    """f(x) = scale * ||x - x_star||_2 + offset.  Nonsmooth at x_star."""

    kind = "scaled-euclidean-norm"

    def __init__(self, scale: float, dimension: int, x_star=None, offset: float = 0.0):
        if not scale > 0.0:
            raise ValueError("scale must be positive")
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.scale = float(scale)
        self.dimension = int(dimension)
        self.x_star = (
            np.zeros(self.dimension)
            if x_star is None
            else _as_vector(x_star, self.dimension, "x_star").copy()
        )
        self.offset = float(offset)
        self.f_star = self.offset
        self.alpha = 0.0
        self.beta = math.inf
        self.lipschitz_G = self.scale

    def value(self, x) -> float:
        u = _as_vector(x, self.dimension) - self.x_star
        return float(self.scale * np.linalg.norm(u) + self.offset)

    def subgradient(self, x) -> Vector:
        u = _as_vector(x, self.dimension) - self.x_star
        nrm = float(np.linalg.norm(u))
        if nrm == 0.0:
            # zero is the minimal-norm subgradient at the kink
            return np.zeros(self.dimension)
        return (self.scale / nrm) * u

    def kink_distance(self, x) -> float:
        return self.distance_to_opt(x)


class SingularQuadratic(Objective):
    """Diagonal quadratic whose eigenvalues may vanish: a flat optimum set.

    The optimum set is the affine subspace fixing the positive-eigenvalue
    coordinates of x_star; the zero-eigenvalue coordinates are free.  The
    value and gradient do not depend on the free coordinates of x_star, so
    ``bind_start`` can move x_star to the projection of a start point onto
    the optimum set without changing the function.
    """

    kind = "singular-quadratic"

    def __init__(self, eigenvalues, x_star=None, offset: float = 0.0):
        eigs = np.asarray(eigenvalues, dtype=np.float64)
        if eigs.ndim != 1 or eigs.size == 0:
            raise ValueError("eigenvalues must be a nonempty 1-D sequence")
        if not np.all(eigs >= 0.0):
            raise ValueError("eigenvalues must be nonnegative")
        if not np.any(eigs > 0.0):
            raise ValueError("at least one eigenvalue must be positive")
        self.eigenvalues = eigs
        self.dimension = int(eigs.size)
        self.x_star = (
            np.zeros(self.dimension)
            if x_star is None
            else _as_vector(x_star, self.dimension, "x_star").copy()
        )
        self.offset = float(offset)
        self.f_star = self.offset
        self.alpha = 0.0
        self.beta = float(eigs.max())
        self.lipschitz_G = math.inf

    def value(self, x) -> float:
        u = _as_vector(x, self.dimension) - self.x_star
        return float(0.5 * np.dot(self.eigenvalues * u, u) + self.offset)

    def subgradient(self, x) -> Vector:
        u = _as_vector(x, self.dimension) - self.x_star
        return self.eigenvalues * u

    def gradient_bound(self, radius: float) -> float:
        return self.beta * radius

    def bind_start(self, x0) -> "SingularQuadratic":
        x0 = _as_vector(x0, self.dimension, "x0")
        projected = np.where(self.eigenvalues > 0.0, self.x_star, x0)
        return SingularQuadratic(self.eigenvalues, x_star=projected, offset=self.offset)


class StronglyConvexWithL1(Objective):
    """f(x) = 0.5*curvature*||x - x_star||^2 + l1_weight*||x - x_star||_1 + offset.

    Strongly convex with modulus ``curvature`` and nonsmooth wherever a
    coordinate of x - x_star vanishes.
    """

    kind = "strongly-convex-plus-l1"

    def __init__(
        self,
        curvature: float,
        l1_weight: float,
        dimension: int,
        x_star=None,
        offset: float = 0.0,
    ):
        if not curvature > 0.0:
            raise ValueError("curvature must be positive")
        if not l1_weight > 0.0:
            raise ValueError("l1_weight must be positive")
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.curvature = float(curvature)
        self.l1_weight = float(l1_weight)
        self.dimension = int(dimension)
        self.x_star = (
            np.zeros(self.dimension)
            if x_star is None
            else _as_vector(x_star, self.dimension, "x_star").copy()
        )
        self.offset = float(offset)
        self.f_star = self.offset
        self.alpha = self.curvature
        self.beta = math.inf
        self.lipschitz_G = math.inf

    def value(self, x) -> float:
        u = _as_vector(x, self.dimension) - self.x_star
        return float(
            0.5 * self.curvature * np.dot(u, u)
            + self.l1_weight * np.abs(u).sum()
            + self.offset
        )

    def subgradient(self, x) -> Vector:
        u = _as_vector(x, self.dimension) - self.x_star
        # sign(0) = 0 picks the minimal-norm subgradient on kink coordinates
        return self.curvature * u + self.l1_weight * np.sign(u)

    def gradient_bound(self, radius: float) -> float:
        # the l1 part contributes at most l1_weight per coordinate
        return self.curvature * radius + self.l1_weight * math.sqrt(self.dimension)

    def kink_distance(self, x) -> float:
        u = _as_vector(x, self.dimension) - self.x_star
        return float(np.min(np.abs(u)))


_KIND_PARAMS = {
    "quadratic": {"eigenvalues"},
    "scaled-euclidean-norm": {"scale"},
    "singular-quadratic": {"eigenvalues"},
    "strongly-convex-plus-l1": {"curvature", "l1_weight"},
}


def make_objective(
    kind: str,
    dimension: int,
    *,
    eigenvalues=None,
    scale=None,
    curvature=None,
    l1_weight=None,
    x_star=None,
    offset: float = 0.0,
) -> Objective:
    """Build an objective by kind name, validating the parameter set.

    Parameters not used by the requested kind are rejected so that config
    typos fail loudly instead of being ignored.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown objective kind {kind!r}, expected one of {KINDS}")
    if dimension < 1:
        raise ValueError("dimension must be >= 1")

    given = {
        name: value
        for name, value in [
            ("eigenvalues", eigenvalues),
            ("scale", scale),
            ("curvature", curvature),
            ("l1_weight", l1_weight),
        ]
        if value is not None
    }
    allowed = _KIND_PARAMS[kind]
    stray = set(given) - allowed
    if stray:
        raise ValueError(f"parameters {sorted(stray)} do not apply to kind {kind!r}")
    missing = allowed - set(given)
    if missing:
        raise ValueError(f"kind {kind!r} requires parameters {sorted(missing)}")

    if kind in ("quadratic", "singular-quadratic"):
        eigs = np.asarray(eigenvalues, dtype=np.float64)
        if eigs.shape != (dimension,):
            raise ValueError(
                f"eigenvalues has length {eigs.size}, expected dimension {dimension}"
            )
        cls = Quadratic if kind == "quadratic" else SingularQuadratic
        return cls(eigs, x_star=x_star, offset=offset)
    if kind == "scaled-euclidean-norm":
        return ScaledNorm(scale, dimension, x_star=x_star, offset=offset)
    return StronglyConvexWithL1(
        curvature, l1_weight, dimension, x_star=x_star, offset=offset
    )


def check_gradient_fd(objective: Objective, x, step: float = 1e-6) -> float:
    """Compare the analytic gradient against central differences.

    Returns max_i |g_i - fd_i| / max(1, |g_i|).  Raises when x sits within
    10*step of a kink, where the comparison is meaningless.
    """
    x = _as_vector(x, objective.dimension)
    if objective.kink_distance(x) < 10.0 * step:
        raise ValueError(
            "nondifferentiable point: move at least 10*step away from kinks"
        )
    g = objective.subgradient(x)
    worst = 0.0
    for i in range(objective.dimension):
        e = np.zeros(objective.dimension)
        e[i] = step
        numeric = (objective.value(x + e) - objective.value(x - e)) / (2.0 * step)
        worst = max(worst, abs(float(g[i]) - numeric) / max(1.0, abs(float(g[i]))))
    return worst
