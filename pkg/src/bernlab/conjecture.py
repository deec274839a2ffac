"""Exploratory solver for the phase equation of the unweighted whole-line
limit problem.

The unknown is an even phase profile rho on a symmetric grid together with
a positive level parameter L, coupled through the discrete Hilbert
transform:

    L * sin(rho(x)) * sinh(rho_tilde(x) + x) = x,

with rho_tilde = hilbert_grid(rho) and the normalization that the profile
extrapolates to pi at x = 0 (the map's centering condition).  Nothing here
claims existence or uniqueness of a solution; the module reports residuals
of candidate profiles and nothing more.

Solution scheme: a damped fixed-point sweep (asin form, clamped) provides
a warm start on a coarse grid; a bordered Newton iteration on the half
grid then solves the discrete system to rounding, and the grid is doubled
until the requested resolution is reached.  The fixed-point sweep alone
stalls near the branch crossover where the asin inversion folds, which is
why the Newton corrector is not optional.  Everything runs in double
precision, matching the Hilbert stencil.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve as _dense_solve

from .errors import InvalidProblemError
from .precision import DEFAULT_CONFIG, PrecisionConfig
from .specialfn import hilbert_grid

_PHASE_FIXED_POINT = "fixed-point"
_PHASE_NEWTON = "newton"

# Tail of pi beyond double precision; sin(float pi) equals it to 1e-49.
_PI_TAIL = float(np.sin(np.pi))

# Fixed-point steps tolerated without improvement before Newton takes over.
_STALL_LIMIT = 300


@dataclass(frozen=True)
class ConjectureState:
    """A candidate phase profile with its residual certificate.

    grid: uniform symmetric abscissas on [-X, X], even count so that x = 0
        falls between nodes (the profile has a root-type cusp there).
    rho: sampled phase in [0, pi], even in x for solver output.
    rho_tilde: discrete Hilbert transform of rho on the grid.
    L: level parameter of the equation.
    residual_norm: max equation residual over interior nodes.
    p: exponent the run was labelled with; the reduced equation itself is
        parameter-free, so this is metadata for reports.
    clamp_events: number of asin-domain violations clamped during the
        fixed-point phase.
    history: per-iteration rows (nodes, phase, residual, L) across all
        continuation levels, coarse to fine.
    """

    grid: np.ndarray
    rho: np.ndarray
    rho_tilde: np.ndarray
    L: float
    residual_norm: float
    p: float = 1.0
    iterations: int = 0
    converged: bool = False
    failed: bool = False
    clamp_events: int = 0
    history: tuple = ()

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        rho = np.asarray(self.rho, dtype=float)
        tilde = np.asarray(self.rho_tilde, dtype=float)
        if grid.ndim != 1 or grid.size < 8:
            raise InvalidProblemError("grid must hold at least 8 nodes")
        if rho.shape != grid.shape or tilde.shape != grid.shape:
            raise InvalidProblemError("rho and rho_tilde must match the grid")
        if not np.all(np.diff(grid) > 0):
            raise InvalidProblemError("grid must be strictly increasing")
        span = max(abs(grid[0]), abs(grid[-1]))
        if abs(grid[0] + grid[-1]) > 1e-9 * span:
            raise InvalidProblemError("grid must be symmetric about 0")
        if np.min(rho) < 0 or np.max(rho) > np.pi:
            raise InvalidProblemError("rho must stay within [0, pi]")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "rho_tilde", tilde)

    @property
    def residual_history(self) -> tuple:
        """Residuals of the iterations taken on the returned grid."""
        n = self.grid.size
        return tuple(row[2] for row in self.history if row[0] == n)


def _validate_exponent(p) -> float:
    p_f = float(p)
    if p_f <= 0 or (p_f == int(p_f) and int(p_f) % 2 == 0):
        raise InvalidProblemError("p must be positive and not an even integer")
    return p_f


def _half_grid(x_max: float, nodes: int) -> np.ndarray:
    return np.linspace(-x_max, x_max, nodes)[nodes // 2 :]


def _half_transform_matrix(nodes: int) -> np.ndarray:
    """Dense matrix mapping rho on the positive half grid to its discrete
    Hilbert transform there, for even rho and even node count.

    Uses the same odd-offset stencil as hilbert_grid; the mirror image of
    positive node i is full index nodes-1-(nodes//2+i), which folds the
    kernel into a sum of two Toeplitz-like gathers.
    """
    m = nodes // 2
    offsets = np.arange(-(nodes - 1), nodes)
    kernel = np.where(
        offsets % 2 != 0, (2.0 / np.pi) / np.where(offsets == 0, 1, offsets), 0.0
    )
    origin = nodes - 1
    cols = np.arange(m)
    mat = np.empty((m, m))
    for row in range(m):
        mat[row] = kernel[origin + row - cols] + kernel[origin + row + 1 + cols]
    return mat


def _defect_weights(xpos: np.ndarray) -> np.ndarray:
    """Extrapolation weights for rho(0) from the three innermost nodes.

    The profile approaches pi with a square-root cusp, so the fit basis is
    {1, sqrt(x), x}; the centering defect is pi - weights @ rho[:3].
    """
    xs = xpos[:3]
    basis = np.vstack([np.ones(3), np.sqrt(xs), xs]).T
    return np.linalg.inv(basis)[0]


def _interior_max(values: np.ndarray) -> float:
    # Half-grid residual vector: drop only the outermost node, where the
    # domain truncation lives; by symmetry the negative side is identical.
    return float(np.max(np.abs(values[:-1])))


def _fixed_point_phase(xpos, mat, L, theta, iters, history, nodes):
    """Damped asin-form sweep from the documented initial guess.

    Returns (rho, L, clamp_events).  The L update pulls toward the largest
    value keeping the asin argument within range, which plays the role of
    the centering adjustment at this accuracy level.
    """
    rho = 0.5 * np.pi * np.exp(-xpos * xpos)
    clamps = 0
    best = np.inf
    stall = 0
    idx = np.arange(xpos.size)
    for _ in range(iters):
        u = xpos + mat @ rho
        sinh_u = np.sinh(u)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            candidate = np.where(sinh_u > 0, xpos / sinh_u, -np.inf)
        peak = int(np.argmax(candidate))
        L = 0.7 * L + 0.3 * max(float(candidate[peak]), 1e-6)
        raw = xpos / (L * np.maximum(sinh_u, 1e-300))
        clamps += int(np.sum((raw < 0.0) | (raw > 1.0)))
        g = np.clip(raw, 0.0, 1.0)
        base = np.arcsin(g)
        # Obtuse branch inside the crossover, acute outside.
        target = np.where(idx < peak, np.pi - base, base)
        margin = np.sqrt(np.maximum(1.0 - g * g, 0.0))
        step = theta * np.minimum(1.0, 4.0 * margin + 0.05)
        rho = np.clip((1.0 - step) * rho + step * target, 0.0, np.pi * (1 - 1e-15))
        res = _interior_max(L * np.sin(rho) * np.sinh(xpos + mat @ rho) - xpos)
        history.append((nodes, _PHASE_FIXED_POINT, res, L))
        if res < best - 1e-15:
            best, stall = res, 0
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                break
    return rho, L, clamps


def _newton_phase(xpos, rho, L, mat, iters, history, nodes):
    """Bordered Newton solve of the discrete system on the half grid.

    Unknowns are (rho at positive nodes, L); the extra row enforces the pi
    centering defect, the extra column carries dF/dL.  Rows are scaled by
    1/(L(|sinh u|+1)) so the huge far-field entries do not swamp the
    linear algebra.  Line search accepts only merit decreases.
    """
    m = xpos.size
    weights = _defect_weights(xpos)

    def assemble(rho_v, L_v):
        u = xpos + mat @ rho_v
        sinh_u, cosh_u = np.sinh(u), np.cosh(u)
        f = L_v * np.sin(rho_v) * sinh_u - xpos
        scale = 1.0 / (L_v * (np.abs(sinh_u) + 1.0))
        defect = np.pi - weights @ rho_v[:3]
        return f, sinh_u, cosh_u, scale, defect

    f, sinh_u, cosh_u, scale, defect = assemble(rho, L)
    merit = np.max(np.abs(f * scale)) + abs(defect)
    converged = False
    for _ in range(iters):
        sin_r, cos_r = np.sin(rho), np.cos(rho)
        jac = np.zeros((m + 1, m + 1))
        jac[:m, :m] = (
            np.diag(L * cos_r * sinh_u) + (L * sin_r * cosh_u)[:, None] * mat
        ) * scale[:, None]
        jac[:m, m] = sin_r * sinh_u * scale
        jac[m, :3] = -weights
        rhs = np.empty(m + 1)
        rhs[:m] = -f * scale
        rhs[m] = -defect
        try:
            delta = _dense_solve(jac, rhs)
        except np.linalg.LinAlgError:
            break
        # Trust region: cap the profile step and the relative L step.
        step = 1.0
        biggest = np.max(np.abs(delta[:m]))
        if biggest > 0.3:
            step = 0.3 / biggest
        if abs(delta[m]) * step > 0.2 * L:
            step = 0.2 * L / abs(delta[m])
        accepted = False
        for _ in range(30):
            rho_try = np.clip(rho + step * delta[:m], 1e-300, np.pi * (1 - 1e-15))
            L_try = L + step * delta[m]
            if L_try > 0:
                f_t, sinh_t, cosh_t, scale_t, defect_t = assemble(rho_try, L_try)
                merit_t = np.max(np.abs(f_t * scale_t)) + abs(defect_t)
                if merit_t < merit * (1 - 1e-4 * step) or merit_t < 1e-14:
                    rho, L = rho_try, L_try
                    f, sinh_u, cosh_u, scale, defect = f_t, sinh_t, cosh_t, scale_t, defect_t
                    merit = merit_t
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            break
        history.append((nodes, _PHASE_NEWTON, _interior_max(f), L))
        if merit < 1e-13:
            converged = True
            break
    return rho, L, converged


def solve_phase_equation(
    p,
    L_init: float = 0.5,
    x_max: float = 40.0,
    nodes: int = 4096,
    cfg: PrecisionConfig | None = None,
    *,
    theta: float = 0.2,
    tol: float = 1e-8,
    fixed_point_iters: int = 400,
    newton_iters: int = 60,
) -> ConjectureState:
    """Solve the discrete phase equation on [-x_max, x_max].

    The exponent p is validated and recorded but does not enter the
    reduced equation.  theta is the damping of the fixed-point warm start;
    tol is the interior residual defining convergence.  Coarse-to-fine
    continuation halves the cost and keeps Newton inside its basin: the
    warm start runs on a grid of at most 256 nodes and each doubling is
    seeded by linear interpolation.

    Never raises on non-convergence: the best state found is returned
    with the failed flag set, so the caller can inspect the trace.
    """
    cfg = cfg or DEFAULT_CONFIG
    p_f = _validate_exponent(p)
    if not L_init > 0:
        raise InvalidProblemError("L_init must be positive")
    if not x_max > 0:
        raise InvalidProblemError("x_max must be positive")
    if nodes < 32 or nodes % 2 != 0:
        raise InvalidProblemError(
            "nodes must be an even count of at least 32 (x = 0 falls between nodes)"
        )
    if not 0 < theta <= 1:
        raise InvalidProblemError("theta must lie in (0, 1]")

    levels = [nodes]
    while levels[0] > 384 and levels[0] % 4 == 0:
        levels.insert(0, levels[0] // 2)

    history: list = []
    clamps = 0
    L = float(L_init)
    rho = None
    xpos = None
    converged = False
    for level in levels:
        x_new = _half_grid(x_max, level)
        mat = _half_transform_matrix(level)
        if rho is None:
            rho, L, clamps = _fixed_point_phase(
                x_new, mat, L, theta, fixed_point_iters, history, level
            )
        else:
            rho = np.interp(x_new, xpos, rho)
        xpos = x_new
        rho, L, converged = _newton_phase(
            xpos, rho, L, mat, newton_iters, history, level
        )

    full_grid = np.linspace(-x_max, x_max, nodes)
    full_rho = np.concatenate([rho[::-1], rho])
    tilde = hilbert_grid(full_rho, full_grid)
    residual = L * np.sin(full_rho) * np.sinh(tilde + full_grid) - full_grid
    residual_norm = float(np.max(np.abs(residual[1:-1])))
    succeeded = converged and residual_norm <= tol
    return ConjectureState(
        grid=full_grid,
        rho=full_rho,
        rho_tilde=tilde,
        L=L,
        residual_norm=residual_norm,
        p=p_f,
        iterations=len(history),
        converged=succeeded,
        failed=not succeeded,
        clamp_events=clamps,
        history=tuple(history),
    )


def phase_residual(state: ConjectureState, *, form: str = "phase") -> float:
    """Max interior residual of the stored state.

    form='phase' evaluates L sin(rho) sinh(rho_tilde + x) - x directly;
    form='height' substitutes the height variable v = pi - rho, which is
    the same equation through sin(pi - rho) = sin(rho) and serves as an
    algebraic cross-check.
    """
    u = state.rho_tilde + state.grid
    if form == "phase":
        sin_angle = np.sin(state.rho)
    elif form == "height":
        # A bare pi - rho loses 1e-16 of angle, which cosh(u) at the far
        # nodes amplifies to order one; compensate the subtraction with
        # pi's double-precision tail so the sine identity survives.
        v = np.pi - state.rho
        residue = (-state.rho) - (v - np.pi)
        sin_angle = np.sin(v) + (residue + _PI_TAIL) * np.cos(v)
    else:
        raise InvalidProblemError("form must be 'phase' or 'height'")
    residual = state.L * sin_angle * np.sinh(u) - state.grid
    return float(np.max(np.abs(residual[1:-1])))


def refinement_ratio(coarse: ConjectureState, mid: ConjectureState, fine: ConjectureState) -> float:
    """Richardson ratio (L_coarse - L_mid)/(L_mid - L_fine) for three
    converged runs at successive grid doublings.

    The ratio estimates 2^q with q the discretization order of the level
    parameter; the nodal residual itself is solved to rounding at every
    resolution, so the order must be read off a convergent observable.
    """
    for state in (coarse, mid, fine):
        if state.failed:
            raise InvalidProblemError("refinement ratio needs converged states")
    if not (coarse.grid.size < mid.grid.size < fine.grid.size):
        raise InvalidProblemError("states must be ordered coarse to fine")
    denom = mid.L - fine.L
    if denom == 0:
        raise InvalidProblemError("refinement increments degenerate to zero")
    return float((coarse.L - mid.L) / denom)
