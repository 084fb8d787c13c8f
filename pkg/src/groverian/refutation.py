"""Stationarity analysis of the GHZ overlap objective under a 3-to-4 angle
substitution, and the mechanical demonstration that maximizing in the
substituted variables is wrong.

The squared GHZ overlap in the real plane,

    P(t1, t2, t3) = (1/2) * (cos t1 cos t2 cos t3 + sin t1 sin t2 sin t3)**2,

rewrites exactly, via product-to-sum identities, as

    P = (1/32) * ((cos w - sin w) + (cos x + sin x)
                  + (cos y + sin y) + (cos z - sin z))**2

with w = t1+t2+t3, x = t1+t2-t3, y = t1-t2+t3, z = t1-t2-t3.  The four
substituted angles satisfy the linear dependence w - x - y + z = 0, so they
parametrize a three-dimensional hyperplane of 4-space, not all of it.

Stationarity in the original variables requires J0 = -J1 = -J2 = J3 for the
four shifted cosines J defined below (constraint "paired"); stationarity in
the substituted variables treated as independent requires all four to vanish
(constraint "all-zero").  The two constraint sets differ: the true maxima
(P = 1/2 at t_i = 0 or +-pi/2 patterns) satisfy the paired constraint with
nonzero J, while the all-zero points that do exist in the box all have
P = 1/4.  Maximizing each bracket term independently would give P = 1, but
every term-maximizing angle assignment violates the hyperplane relation by an
odd multiple of pi and therefore corresponds to no (t1, t2, t3) at all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import RealAngles

SQRT2 = math.sqrt(2.0)
HYPERPLANE_TOL = 1e-12

_HALF_PI = math.pi / 2.0
_REFINE_ITERATIONS = 200
_REFINE_SHRINK = 0.5
_REFINE_MIN_STEP = 1e-14
# Each |J_i| changes by at most sqrt(2) per unit move of any t_j, so a zero
# of max|J| is within (3h/2)*sqrt(2) of some grid value at spacing h.
_CANDIDATE_LIPSCHITZ = 3.0 * SQRT2


@dataclass(frozen=True)
class TransformedAngles:
    """The substituted angles (w, x, y, z); feasible images of real triples
    satisfy w - x - y + z = 0, but arbitrary points are representable."""

    theta_w: float
    theta_x: float
    theta_y: float
    theta_z: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.theta_w, self.theta_x, self.theta_y, self.theta_z)


@dataclass(frozen=True)
class JVector:
    """The four stationarity functions; each is a shifted cosine of amplitude
    sqrt(2), so |j_i| <= sqrt(2) always."""

    j0: float
    j1: float
    j2: float
    j3: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.j0, self.j1, self.j2, self.j3)

    def max_abs(self) -> float:
        return max(abs(v) for v in self.as_tuple())

    def min_abs(self) -> float:
        return min(abs(v) for v in self.as_tuple())


@dataclass(frozen=True)
class InfeasibleTransform:
    """Off-hyperplane point: no real angle triple maps onto it."""

    residual: float


@dataclass(frozen=True)
class JZeroSolution:
    """A point where all four J functions vanish, with its objective value."""

    thetas: tuple[float, float, float]
    j: tuple[float, float, float, float]
    objective: float
    max_abs_j: float


@dataclass(frozen=True)
class ConstraintSearchReport:
    """Outcome of the certified scan for all-zero J points in the angle box."""

    solutions: tuple[JZeroSolution, ...]
    true_max: float
    hyperplane_min_residual: float
    grid_resolution: int
    eps: float

    def best_solution_objective(self) -> float:
        return max((s.objective for s in self.solutions), default=0.0)


@dataclass(frozen=True)
class FlawedMaximum:
    """The termwise maximum of the substituted objective and why it is void."""

    value: float
    witness: TransformedAngles
    witness_residual: float


def transform_to_wxyz(angles: RealAngles) -> TransformedAngles:
    """(t1, t2, t3) -> (t1+t2+t3, t1+t2-t3, t1-t2+t3, t1-t2-t3)."""
    t1, t2, t3 = _three(angles)
    return TransformedAngles(t1 + t2 + t3, t1 + t2 - t3, t1 - t2 + t3, t1 - t2 - t3)


def hyperplane_residual(t: TransformedAngles) -> float:
    """w - x - y + z; identically zero on images of :func:`transform_to_wxyz`."""
    return t.theta_w - t.theta_x - t.theta_y + t.theta_z


def inverse_transform(t: TransformedAngles) -> RealAngles | InfeasibleTransform:
    """Solve back for (t1, t2, t3) when the point lies on the hyperplane.

    Off-hyperplane points (|residual| >= ``HYPERPLANE_TOL``) have no preimage
    and yield an :class:`InfeasibleTransform` carrying the residual.
    """
    residual = hyperplane_residual(t)
    if abs(residual) >= HYPERPLANE_TOL:
        return InfeasibleTransform(residual=residual)
    return RealAngles(
        (
            (t.theta_w + t.theta_z) / 2.0,
            (t.theta_w - t.theta_y) / 2.0,
            (t.theta_w - t.theta_x) / 2.0,
        )
    )


def ghz_objective_3param(angles: RealAngles) -> float:
    """(1/2) (cos t1 cos t2 cos t3 + sin t1 sin t2 sin t3)**2."""
    t1, t2, t3 = _three(angles)
    return _objective3(t1, t2, t3)


def ghz_objective_4param(t: TransformedAngles) -> float:
    """The substituted form, defined on all of 4-space including off-hyperplane
    points; agrees with :func:`ghz_objective_3param` exactly on the hyperplane."""
    return _objective4(*t.as_tuple())


def j_vector(t: TransformedAngles) -> JVector:
    """J0 = -sin w - cos w, J1 = cos x - sin x, J2 = cos y - sin y,
    J3 = -sin z - cos z (the bracket-term derivatives)."""
    w, x, y, z = t.as_tuple()
    return JVector(
        -math.sin(w) - math.cos(w),
        -math.sin(x) + math.cos(x),
        -math.sin(y) + math.cos(y),
        -math.sin(z) - math.cos(z),
    )


def j_vector_shifted_cosine(t: TransformedAngles) -> JVector:
    """Equivalent closed forms: J0 = -sqrt(2) cos(pi/4 - w), J1 = sqrt(2)
    cos(pi/4 + x), J2 = sqrt(2) cos(pi/4 + y), J3 = -sqrt(2) cos(pi/4 - z)."""
    w, x, y, z = t.as_tuple()
    q = math.pi / 4.0
    return JVector(
        -SQRT2 * math.cos(q - w),
        SQRT2 * math.cos(q + x),
        SQRT2 * math.cos(q + y),
        -SQRT2 * math.cos(q - z),
    )


def constraint4_residual(t: TransformedAngles) -> float:
    """How far J is from the paired pattern J0 = -J1 = -J2 = J3; zero exactly
    at stationary points of the objective in the original three angles."""
    j = j_vector(t)
    return max(abs(j.j0 + j.j1), abs(j.j0 + j.j2), abs(j.j0 - j.j3))


def constraint4_sums(t: TransformedAngles) -> tuple[float, float, float]:
    """The three summed stationarity conditions (J0+J1+J2+J3, J0+J1-J2-J3,
    J0-J1+J2-J3); they vanish simultaneously iff
    :func:`constraint4_residual` is zero."""
    j = j_vector(t)
    return (
        j.j0 + j.j1 + j.j2 + j.j3,
        j.j0 + j.j1 - j.j2 - j.j3,
        j.j0 - j.j1 + j.j2 - j.j3,
    )


def flawed_max_ghz() -> FlawedMaximum:
    """Termwise maximum of the substituted objective: each of the four bracket
    terms attains sqrt(2) independently, giving (1/32)(4 sqrt(2))**2 = 1
    exactly.  The witness point realizing all four termwise maxima sits a full
    pi off the hyperplane, so no real angle triple reaches this value; the
    maximum of the true objective is 1/2."""
    value = (4.0**2 * 2.0) / 32.0  # (4*sqrt(2))**2 / 32, kept in exact arithmetic
    witness = TransformedAngles(-math.pi / 4, math.pi / 4, math.pi / 4, -math.pi / 4)
    return FlawedMaximum(
        value=value,
        witness=witness,
        witness_residual=hyperplane_residual(witness),
    )


def sign_resolved_min_residual() -> float:
    """Minimum |hyperplane residual| over the whole term-maximizing family
    {w = -pi/4, x = pi/4, y = pi/4, z = -pi/4 (each mod 2 pi)}.

    The residual of any member is -pi + 2 pi m, so the minimum over canonical
    representatives in (-pi, pi] is exactly pi: the family never touches the
    hyperplane.
    """
    base = (-math.pi / 4) - (math.pi / 4) - (math.pi / 4) + (-math.pi / 4)
    return abs(canonical_angle(base))


def substitution_identity_check(samples: int, rng_seed: int = 0) -> float:
    """Max absolute deviation between the 3-angle objective and the
    substituted 4-angle objective over random triples in the angle box."""
    if samples < 1:
        raise ValueError(f"samples: must be >= 1, got {samples!r}")
    rng = np.random.default_rng(rng_seed)
    t = rng.uniform(-_HALF_PI, _HALF_PI, size=(samples, 3))
    t1, t2, t3 = t[:, 0], t[:, 1], t[:, 2]
    obj3 = 0.5 * (np.cos(t1) * np.cos(t2) * np.cos(t3) + np.sin(t1) * np.sin(t2) * np.sin(t3)) ** 2
    w, x, y, z = t1 + t2 + t3, t1 + t2 - t3, t1 - t2 + t3, t1 - t2 - t3
    bracket = (
        (np.cos(w) - np.sin(w))
        + (np.cos(x) + np.sin(x))
        + (np.cos(y) + np.sin(y))
        + (np.cos(z) - np.sin(z))
    )
    return float(np.max(np.abs(obj3 - bracket * bracket / 32.0)))


def constraint5_search(grid_resolution: int = 181, eps: float = 1e-8) -> ConstraintSearchReport:
    """Certified scan of the angle box for points where all four J vanish.

    Scans the full grid, refines every grid-local minimum of max|J| whose
    value is below the Lipschitz bound for a zero in an adjacent cell, and
    keeps refined points with max|J| < eps.  Also refines the grid maximum of
    the objective itself (``true_max``) and reports the minimum hyperplane
    residual of the term-maximizing family.
    """
    if grid_resolution < 9:
        raise ValueError(f"grid_resolution: must be >= 9, got {grid_resolution!r}")
    if not eps > 0.0:
        raise ValueError(f"eps: must be > 0, got {eps!r}")
    grid = np.linspace(-_HALF_PI, _HALF_PI, grid_resolution)
    spacing = grid[1] - grid[0]
    threshold = _CANDIDATE_LIPSCHITZ * spacing

    f = np.empty((grid_resolution,) * 3)
    obj = np.empty_like(f)
    t2, t3 = np.meshgrid(grid, grid, indexing="ij")
    for i1, t1 in enumerate(grid):
        w, x = t1 + t2 + t3, t1 + t2 - t3
        y, z = t1 - t2 + t3, t1 - t2 - t3
        f[i1] = np.maximum.reduce(
            [
                np.abs(np.sin(w) + np.cos(w)),
                np.abs(np.cos(x) - np.sin(x)),
                np.abs(np.cos(y) - np.sin(y)),
                np.abs(np.sin(z) + np.cos(z)),
            ]
        )
        obj[i1] = 0.5 * (
            math.cos(t1) * np.cos(t2) * np.cos(t3) + math.sin(t1) * np.sin(t2) * np.sin(t3)
        ) ** 2

    solutions = []
    for idx in _grid_local_minima(f, threshold):
        start = grid[list(idx)]
        point, value = _pattern_search(_max_abs_j, start, spacing)
        if value >= eps:
            continue
        thetas = tuple(canonical_angle(v) for v in point)
        if any(_close(thetas, s.thetas, 1e-6) for s in solutions):
            continue
        j = j_vector(transform_to_wxyz(RealAngles(thetas)))
        solutions.append(
            JZeroSolution(
                thetas=thetas,
                j=j.as_tuple(),
                objective=ghz_objective_3param(RealAngles(thetas)),
                max_abs_j=value,
            )
        )
    solutions.sort(key=lambda s: s.thetas)

    best_idx = np.unravel_index(int(np.argmax(obj)), obj.shape)
    peak, neg_value = _pattern_search(
        lambda p: -_objective3(*p), grid[list(best_idx)], spacing
    )
    true_max = max(float(np.max(obj)), -neg_value)

    return ConstraintSearchReport(
        solutions=tuple(solutions),
        true_max=true_max,
        hyperplane_min_residual=sign_resolved_min_residual(),
        grid_resolution=grid_resolution,
        eps=eps,
    )


def refutation_report(
    grid_resolution: int = 181,
    eps: float = 1e-8,
    identity_samples: int = 10**5,
    rng_seed: int = 0,
) -> dict:
    """JSON-ready summary combining the flawed maximum, the certified search,
    and the identity check.

    Schema: {"solutions": [{"theta": [...], "j": [...], "objective": ...}],
    "flawed_max": 1.0, "true_max": 0.5, "hyperplane_min_residual": pi,
    "identity_deviation": ...}.
    """
    search = constraint5_search(grid_resolution, eps)
    flawed = flawed_max_ghz()
    return {
        "solutions": [
            {
                "theta": list(s.thetas),
                "j": list(s.j),
                "objective": s.objective,
            }
            for s in search.solutions
        ],
        "flawed_max": flawed.value,
        "true_max": search.true_max,
        "hyperplane_min_residual": search.hyperplane_min_residual,
        "identity_deviation": substitution_identity_check(identity_samples, rng_seed),
    }


def canonical_angle(x: float) -> float:
    """Reduce an angle to the canonical representative in (-pi, pi]."""
    y = math.remainder(x, 2.0 * math.pi)
    return y + 2.0 * math.pi if y <= -math.pi else y


# ----------------------------------------------------------------------------
# Internals
# ----------------------------------------------------------------------------

def _three(angles: RealAngles) -> tuple[float, float, float]:
    if len(angles) != 3:
        raise ValueError(f"angles: expected exactly 3 angles, got {len(angles)}")
    return angles.thetas  # type: ignore[return-value]


def _objective3(t1: float, t2: float, t3: float) -> float:
    amp = math.cos(t1) * math.cos(t2) * math.cos(t3) + math.sin(t1) * math.sin(t2) * math.sin(t3)
    return 0.5 * amp * amp


def _objective4(w: float, x: float, y: float, z: float) -> float:
    bracket = (
        (math.cos(w) - math.sin(w))
        + (math.cos(x) + math.sin(x))
        + (math.cos(y) + math.sin(y))
        + (math.cos(z) - math.sin(z))
    )
    return bracket * bracket / 32.0


def _max_abs_j(point: np.ndarray) -> float:
    t1, t2, t3 = point
    w, x, y, z = t1 + t2 + t3, t1 + t2 - t3, t1 - t2 + t3, t1 - t2 - t3
    return max(
        abs(math.sin(w) + math.cos(w)),
        abs(math.cos(x) - math.sin(x)),
        abs(math.cos(y) - math.sin(y)),
        abs(math.sin(z) + math.cos(z)),
    )


def _grid_local_minima(f: np.ndarray, threshold: float) -> list[tuple[int, ...]]:
    """Indices of grid points below threshold that are minima of their
    6-neighborhood (ties allowed, so flat basins still yield candidates;
    boundary points only compare against existing neighbors)."""
    is_min = f < threshold
    for axis in range(f.ndim):
        head = [slice(None)] * f.ndim
        tail = [slice(None)] * f.ndim
        head[axis] = slice(None, -1)
        tail[axis] = slice(1, None)
        head, tail = tuple(head), tuple(tail)
        is_min[head] &= f[head] <= f[tail]
        is_min[tail] &= f[tail] <= f[head]
    return [tuple(idx) for idx in np.argwhere(is_min)]


def _pattern_search(fun, start: np.ndarray, step0: float) -> tuple[np.ndarray, float]:
    """Coordinate pattern search inside the closed angle box, minimizing fun."""
    point = np.array(start, dtype=float)
    best = fun(point)
    step = float(step0)
    for _ in range(_REFINE_ITERATIONS):
        improved = False
        for d in range(point.size):
            for sign in (1.0, -1.0):
                trial = point.copy()
                trial[d] += sign * step
                if not -_HALF_PI <= trial[d] <= _HALF_PI:
                    continue
                value = fun(trial)
                if value < best:
                    best, point = value, trial
                    improved = True
        if not improved:
            step *= _REFINE_SHRINK
            if step < _REFINE_MIN_STEP:
                break
    return point, best


def _close(a: tuple[float, ...], b: tuple[float, ...], tol: float) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(a, b))
