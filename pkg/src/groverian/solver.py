"""Numerical maximization of squared product-state overlap (best rank-1 fit).

The maximizer is an alternating scheme, the qubit version of the higher-order
power method: with all factors but one held fixed, the overlap is linear in
the remaining factor, so the normalized environment vector is the exact
single-factor optimum.  Cycling through the factors therefore increases the
squared overlap monotonically.  Because the landscape can hold several local
maxima, the solver runs many starts; the first start is always the best
computational basis state, which guarantees pmax >= max_x |a_x|**2 even with
a single start.

All starts are iterated together as one batched array, which keeps the result
bit-identical regardless of scheduling and is dramatically faster than a
Python loop over starts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    NormalizationError,
    ProductState,
    PureState,
    RealAngles,
    SingleQubitState,
)

RESTRICTIONS = ("full_bloch", "real_plane")

DEGENERATE_ENV_NORM = 1e-14  # below this the previous factor is kept
_MONOTONE_SLACK = 1e-12
_REAL_INPUT_TOL = 1e-12
_GRID_BUDGET = 10**8  # max number of grid points in the brute-force search

_AXES = "abcdefghijkl"


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the multi-start alternating maximizer.

    ``tol`` is the absolute change in squared overlap per full sweep below
    which a start counts as converged.  ``restriction`` picks the start
    distribution: Haar-random factors (``full_bloch``) or real-plane angles
    uniform on [-pi/2, pi/2] (``real_plane``, real-amplitude states only).
    """

    n_starts: int = 32
    max_sweeps: int = 500
    tol: float = 1e-12
    rng_seed: int = 0
    restriction: str = "full_bloch"

    def __post_init__(self) -> None:
        if self.n_starts < 1:
            raise ValueError(f"n_starts: must be >= 1, got {self.n_starts!r}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps: must be >= 1, got {self.max_sweeps!r}")
        if not self.tol > 0.0:
            raise ValueError(f"tol: must be > 0, got {self.tol!r}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError(f"rng_seed: must be an unsigned 64-bit integer, got {self.rng_seed!r}")
        if self.restriction not in RESTRICTIONS:
            raise ValueError(
                f"restriction: must be one of {RESTRICTIONS}, got {self.restriction!r}"
            )


@dataclass(frozen=True)
class PmaxResult:
    """Best squared overlap over all starts, with the optimizing product state.

    ``sweeps_used`` counts the full sweeps executed; ``converged`` refers to
    the best start; ties across starts resolve to the lowest start index.
    """

    pmax: float
    optimizer: ProductState
    sweeps_used: int
    converged: bool
    best_start: int


def pmax_alternating(psi: PureState, cfg: SolverConfig = SolverConfig()) -> PmaxResult:
    """Maximize |<product|psi>|**2 by multi-start alternating factor updates."""
    norm_sq = float(np.sum(np.abs(psi.amplitudes) ** 2))
    if abs(norm_sq - 1.0) > 1e-10:
        raise NormalizationError(f"psi: squared norm {norm_sq!r} is not 1 within 1e-10")
    n = psi.n_qubits
    if n > len(_AXES):
        raise ValueError(f"psi: solver supports at most {len(_AXES)} qubits, got {n}")

    factors = _start_factors(psi, cfg)
    sq, factors, conv_at, sweeps = _batched_ascent(
        psi.tensor(), factors, cfg.max_sweeps, cfg.tol
    )
    best = int(np.argmax(sq))
    optimizer = ProductState(
        tuple(SingleQubitState(factors[best, k, 0], factors[best, k, 1]) for k in range(n))
    )
    return PmaxResult(
        pmax=float(sq[best]),
        optimizer=optimizer,
        sweeps_used=sweeps,
        converged=bool(conv_at[best] >= 0),
        best_start=best,
    )


def groverian(psi: PureState, cfg: SolverConfig = SolverConfig()) -> float:
    """sqrt(1 - pmax) computed from the numerical maximizer."""
    return math.sqrt(max(0.0, 1.0 - pmax_alternating(psi, cfg).pmax))


def objective_real(psi: PureState, angles: RealAngles) -> float:
    """Squared overlap of a real state with the real-plane product state.

    Equals (sum_x a_x prod_i c_i(x_i))**2 with c_i(0) = cos(theta_i) and
    c_i(1) = sin(theta_i).
    """
    a = _real_tensor(psi)
    if len(angles) != psi.n_qubits:
        raise ValueError(
            f"angles: expected {psi.n_qubits} angles, got {len(angles)}"
        )
    for t in angles.thetas:
        a = np.tensordot(a, np.array([math.cos(t), math.sin(t)]), axes=([0], [0]))
    return float(a) ** 2


def gradient_real(psi: PureState, angles: RealAngles) -> np.ndarray:
    """Analytic gradient of :func:`objective_real` with respect to the angles.

    d/d(theta_i) replaces factor i by (-sin(theta_i), cos(theta_i)) inside the
    amplitude sum: grad_i = 2 * A * (d_i . v_i) with v_i the contraction of
    psi against all other factors.
    """
    t = _real_tensor(psi)
    n = psi.n_qubits
    if len(angles) != n:
        raise ValueError(f"angles: expected {n} angles, got {len(angles)}")
    cs = np.stack(
        [np.cos(angles.thetas), np.sin(angles.thetas)], axis=1
    )  # (n, 2) factor amplitudes
    ds = np.stack(
        [-np.sin(angles.thetas), np.cos(angles.thetas)], axis=1
    )  # (n, 2) factor derivatives
    grad = np.empty(n)
    amplitude = None
    for i in range(n):
        v = t
        for j in reversed(range(n)):
            if j == i:
                continue
            v = np.tensordot(v, cs[j], axes=([j], [0]))
        if amplitude is None:
            amplitude = float(cs[i] @ v)
        grad[i] = 2.0 * amplitude * float(ds[i] @ v)
    return grad


def pmax_gridsearch(psi: PureState, resolution: int) -> float:
    """Brute-force lower bound on pmax for real states.

    Maximizes :func:`objective_real` over the full grid with ``resolution``
    points per angle on [-pi/2, pi/2].  Within O(spacing**2) of the true
    maximum for smooth objectives; memory grows as resolution**n (guarded).
    """
    if resolution < 3:
        raise ValueError(f"resolution: must be >= 3, got {resolution!r}")
    n = psi.n_qubits
    if resolution**n > _GRID_BUDGET:
        raise ValueError(
            f"resolution: grid of {resolution}**{n} points exceeds the "
            f"{_GRID_BUDGET:.0e} budget"
        )
    a = _real_tensor(psi)
    thetas = np.linspace(-math.pi / 2, math.pi / 2, resolution)
    c = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)  # (resolution, 2)
    for _ in range(n):
        a = np.tensordot(a, c, axes=([0], [1]))
    return float(np.max(a * a))


def ascent_history(
    psi: PureState, start: ProductState, max_sweeps: int = 500, tol: float = 1e-12
) -> np.ndarray:
    """Per-sweep squared overlaps of a single alternating run (entry 0 is the
    start's own squared overlap).  Exposed for diagnostics and for checking
    the monotone-ascent guarantee directly."""
    if psi.n_qubits != start.n_qubits:
        raise ValueError(
            f"dimension mismatch: state has {psi.n_qubits} qubits, start has {start.n_qubits}"
        )
    factors = start.factor_matrix()[np.newaxis, :, :].copy()
    history = [float(_batched_overlap_sq(psi.tensor(), factors)[0])]

    def record(sq: np.ndarray) -> None:
        history.append(float(sq[0]))

    _batched_ascent(psi.tensor(), factors, max_sweeps, tol, on_sweep=record)
    return np.asarray(history)


# ----------------------------------------------------------------------------
# Batched internals
# ----------------------------------------------------------------------------

def _start_factors(psi: PureState, cfg: SolverConfig) -> np.ndarray:
    """(n_starts, n, 2) start factors; row 0 is the best basis product state."""
    n = psi.n_qubits
    s = cfg.n_starts
    factors = np.zeros((s, n, 2), dtype=np.complex128)
    x = int(np.argmax(np.abs(psi.amplitudes) ** 2))
    for i in range(n):
        bit = (x >> (n - 1 - i)) & 1
        factors[0, i, bit] = 1.0
    if s == 1:
        return factors
    rng = np.random.default_rng(cfg.rng_seed)
    if cfg.restriction == "real_plane":
        if not psi.is_real(_REAL_INPUT_TOL):
            raise ValueError(
                "psi: real_plane restriction requires real amplitudes "
                f"(imaginary parts below {_REAL_INPUT_TOL})"
            )
        th = rng.uniform(-math.pi / 2, math.pi / 2, size=(s - 1, n))
        factors[1:, :, 0] = np.cos(th)
        factors[1:, :, 1] = np.sin(th)
    else:
        z = rng.normal(size=(s - 1, n, 2)) + 1j * rng.normal(size=(s - 1, n, 2))
        factors[1:] = z / np.linalg.norm(z, axis=2, keepdims=True)
    return factors


def _batched_env(t: np.ndarray, factors: np.ndarray, k: int) -> np.ndarray:
    """Environment vectors of qubit k for every start at once: (n_starts, 2)."""
    n = t.ndim
    if n == 1:
        return np.broadcast_to(t, (factors.shape[0], 2))
    operands = [t]
    subs = [_AXES[:n]]
    for j in range(n):
        if j == k:
            continue
        operands.append(np.conj(factors[:, j]))
        subs.append("z" + _AXES[j])
    return np.einsum(",".join(subs) + "->z" + _AXES[k], *operands, optimize=True)


def _batched_overlap_sq(t: np.ndarray, factors: np.ndarray) -> np.ndarray:
    v = _batched_env(t, factors, factors.shape[1] - 1)
    ov = np.einsum("sb,sb->s", np.conj(factors[:, -1]), v)
    return np.abs(ov) ** 2


def _batched_ascent(
    t: np.ndarray,
    factors: np.ndarray,
    max_sweeps: int,
    tol: float,
    on_sweep=None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Sweep all starts until each one's per-sweep gain falls below tol.

    Returns (squared overlaps, factors, sweep index of convergence per start
    (-1 if never), sweeps executed).  Updates are the exact per-factor optima,
    so the squared overlap of every start is nondecreasing sweep to sweep; a
    degenerate environment (norm below ``DEGENERATE_ENV_NORM``) keeps the
    previous factor, preserving monotonicity at saddle configurations.
    """
    n_starts, n = factors.shape[0], factors.shape[1]
    sq = _batched_overlap_sq(t, factors)
    conv_at = np.full(n_starts, -1, dtype=int)
    sweeps = 0
    for sweep in range(1, max_sweeps + 1):
        sweeps = sweep
        v = None
        for k in range(n):
            v = _batched_env(t, factors, k)
            norms = np.linalg.norm(v, axis=1)
            ok = norms > DEGENERATE_ENV_NORM
            safe = np.where(ok, norms, 1.0)[:, np.newaxis]
            factors[:, k] = np.where(ok[:, np.newaxis], v / safe, factors[:, k])
        # v is the environment of the last factor w.r.t. all current others,
        # so the full overlap is free here.
        new_sq = np.abs(np.einsum("sb,sb->s", np.conj(factors[:, n - 1]), v)) ** 2
        assert np.all(new_sq >= sq - _MONOTONE_SLACK), "squared overlap decreased within a sweep"
        newly = (np.abs(new_sq - sq) < tol) & (conv_at < 0)
        conv_at[newly] = sweep
        sq = new_sq
        if on_sweep is not None:
            on_sweep(sq)
        if np.all(conv_at >= 0):
            break
    return sq, factors, conv_at, sweeps


def _real_tensor(psi: PureState) -> np.ndarray:
    if not psi.is_real(_REAL_INPUT_TOL):
        raise ValueError(
            f"psi: real-plane routines require real amplitudes "
            f"(imaginary parts below {_REAL_INPUT_TOL})"
        )
    return psi.amplitudes.real.reshape((2,) * psi.n_qubits)
