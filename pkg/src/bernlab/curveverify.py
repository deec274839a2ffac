"""Structural verification of computed minimax solutions.

Three independent checks tie a solved two-interval |x|^p problem back to
its conformal-map structure:

* the phase arccos((-1)^[p/2] (P(z) - z^p)/E) continues to a curve in the
  half-strip u in (0, (m+1) pi), v > 0 along z = iy, and on that curve
  E sin(u) sinh(v) equals |sin(pi p/2)| y^p identically, so the residual
  measures nothing but numerical error;
* the coefficient sequence of P(x) - x^p - tE, ordered by exponent, shows
  exactly m+1 sign changes (a total-positivity fact), with prescribed
  endpoint signs;
* rescaled extremal functions approach the explicit limit profiles as the
  degree grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp

from .conformal import power_limit_profile, sgn_limit_profile
from .errors import BranchTrackingError, InvalidProblemError, PrecisionBudgetError
from .precision import DEFAULT_CONFIG, PrecisionConfig, as_mpf
from .remez import (
    MinimaxProblem,
    MinimaxSolution,
    ProblemKind,
    build_power_problem,
    build_sgn_problem,
    clenshaw,
    eval_solution,
    solve,
)

_MAX_REFINE = 48


@dataclass(frozen=True)
class PhaseTrace:
    """The phase along z = iy: u + iv = phi(iy) with branch bookkeeping.

    branch_windings packs the arccos branch per point as 2n for
    phi = acos(g) + 2 pi n and 2n + 1 for phi = -acos(g) + 2 pi n.
    """

    y_grid: tuple
    u: tuple
    v: tuple
    branch_windings: tuple

    def __post_init__(self):
        ys = list(self.y_grid)
        if ys != sorted(ys) or (ys and ys[0] <= 0):
            raise InvalidProblemError("y_grid must be increasing and positive")
        for vv in self.v:
            if not vv > 0:
                raise InvalidProblemError("trace left the open upper half-strip")
        for left, right in zip(self.u, self.u[1:]):
            if abs(right - left) >= mp.pi / 2:
                raise InvalidProblemError(
                    "u jumps by >= pi/2 between neighbors; grid too coarse"
                )


def _phase_samples(sol: MinimaxSolution, problem: MinimaxProblem, cfg):
    """Closure y -> (-1)^[p/2] (P(iy) - (iy)^p) / E, the arccos argument."""
    if problem.kind is not ProblemKind.POWER:
        raise InvalidProblemError("phase reconstruction expects a power problem")
    p = as_mpf(problem.p)
    sign = 1 if int(mp.floor(p / 2)) % 2 == 0 else -1
    err = sol.error
    if err <= 0:
        raise InvalidProblemError("degenerate solution: zero error")
    cosf = mp.cospi(p / 2)
    sinf = mp.sinpi(p / 2)
    coeffs = sol.coeffs
    interval = sol.interval

    def g(y):
        # P(iy) is real since P is even; (iy)^p on the principal branch.
        poly = clenshaw(coeffs, interval, -y * y)
        yp = y**p
        return sign * mp.mpc(poly - cosf * yp, -sinf * yp) / err

    return g


def _branch_candidates(base, prev):
    """All arccos preimages near prev: +/-base + 2 pi n with encodings."""
    two_pi = 2 * mp.pi
    center = int(mp.floor(mp.re(prev) / two_pi + mp.mpf(1) / 2))
    out = []
    for n in range(center - 2, center + 3):
        out.append((base + two_pi * n, 2 * n))
        out.append((-base + two_pi * n, 2 * n + 1))
    return out


def reconstruct_phase(
    sol: MinimaxSolution,
    problem: MinimaxProblem,
    y_grid,
    cfg: PrecisionConfig | None = None,
) -> PhaseTrace:
    """Continue the phase along z = iy over an increasing grid.

    The branch is seeded at the smallest y by the boundary correspondence
    (phi climbs the left edge u = 0 as z runs down (0, a)), then each
    step keeps the preimage closest to the previous point, bisecting the
    gap in y whenever the phase moves by more than 1/2.
    """
    cfg = cfg or DEFAULT_CONFIG
    with cfg.workprec():
        ys = [as_mpf(y) for y in y_grid]
        if not ys or any(b <= a for a, b in zip(ys, ys[1:])) or ys[0] <= 0:
            raise InvalidProblemError("y_grid must be positive and increasing")
        g = _phase_samples(sol, problem, cfg)

        def principal(y):
            return mp.acos(g(y))

        # Seed: the limit point at y -> 0+ sits on the edge u = 0, so pick
        # the preimage with positive imaginary part and smallest |Re|.
        base = principal(ys[0])
        first = base if mp.im(base) > 0 else -base
        if abs(mp.re(first)) > mp.pi / 2:
            raise BranchTrackingError(
                "seed phase unexpectedly far from the u = 0 edge; "
                "start the grid at smaller y"
            )
        winding0 = 0 if mp.im(base) > 0 else 1
        phis = [first]
        windings = [winding0]

        prev_y, prev_phi = ys[0], first
        out_u, out_v = [mp.re(first)], [mp.im(first)]
        for y_target in ys[1:]:
            y = y_target
            pending = []
            refines = 0
            while True:
                base = principal(y)
                cands = _branch_candidates(base, prev_phi)
                phi, code = min(cands, key=lambda c: abs(c[0] - prev_phi))
                if abs(phi - prev_phi) <= mp.mpf(1) / 2:
                    prev_y, prev_phi = y, phi
                    if not pending:
                        out_u.append(mp.re(phi))
                        out_v.append(mp.im(phi))
                        windings.append(code)
                        break
                    y = pending.pop()
                else:
                    refines += 1
                    if refines > _MAX_REFINE:
                        raise BranchTrackingError(
                            f"phase continuation stalled near y = {mp.nstr(y, 8)}"
                        )
                    pending.append(y)
                    y = mp.sqrt(prev_y * y)  # geometric midpoint
        return PhaseTrace(
            y_grid=tuple(ys),
            u=tuple(out_u),
            v=tuple(out_v),
            branch_windings=tuple(windings),
        )


def curve_residuals(trace: PhaseTrace, error, p, cfg: PrecisionConfig | None = None):
    """Relative residuals of the curve equation along the trace:

        (E sin u sinh v - |sin(pi p/2)| y^p) / (|sin(pi p/2)| y^p).

    The equation is an exact identity of the extremal polynomial, so the
    residual is a pure numerical-error measure.
    """
    cfg = cfg or DEFAULT_CONFIG
    with cfg.workprec():
        error = as_mpf(error)
        p = as_mpf(p)
        scale = abs(mp.sinpi(p / 2))
        if scale == 0:
            raise InvalidProblemError("even integer p degenerates the curve equation")
        out = []
        for y, u, v in zip(trace.y_grid, trace.u, trace.v):
            rhs = scale * y**p
            out.append((error * mp.sin(u) * mp.sinh(v) - rhs) / rhs)
        return tuple(out)


@dataclass(frozen=True)
class SignPatternReport:
    """Outcome of the coefficient sign-change count for P(x) - x^p - tE."""

    t: object
    exponents: tuple
    signs: tuple
    sign_changes: int
    expected_changes: int
    first_sign: int
    last_sign: int
    expected_first: int
    expected_last: int

    @property
    def passed(self) -> bool:
        return (
            self.sign_changes == self.expected_changes
            and self.first_sign == self.expected_first
            and self.last_sign == self.expected_last
        )


def _monomial_coefficients(coeffs, interval, cfg):
    """Expand a Chebyshev-basis polynomial into monomials of y.

    Done at doubled working precision; the conversion conditioning grows
    exponentially with the degree, hence the caller's degree cap.
    """
    a, b = interval
    # T_j(s) with s = (2y - (a+b))/(b-a); build power series in y.
    c1 = 2 / (b - a)
    c0 = -(b + a) / (b - a)
    deg = len(coeffs) - 1
    t_prev = [mp.mpf(1)]
    t_cur = [c0, c1]
    out = [mp.mpf(0)] * (deg + 1)
    out[0] += coeffs[0]
    if deg >= 1:
        out[0] += coeffs[1] * c0
        out[1] += coeffs[1] * c1
    for j in range(2, deg + 1):
        # T_j = 2 s T_{j-1} - T_{j-2} as coefficient lists.
        t_next = [mp.mpf(0)] * (j + 1)
        for i, cval in enumerate(t_cur):
            t_next[i] += 2 * c0 * cval
            t_next[i + 1] += 2 * c1 * cval
        for i, cval in enumerate(t_prev):
            t_next[i] -= cval
        for i, cval in enumerate(t_next):
            out[i] += coeffs[j] * cval
        t_prev, t_cur = t_cur, t_next
    return out


def sign_pattern_check(
    sol: MinimaxSolution,
    problem: MinimaxProblem,
    t,
    cfg: PrecisionConfig | None = None,
) -> SignPatternReport:
    """Count coefficient sign changes of P(x) - x^p - tE by exponent order.

    In the reduced variable y = x^2 the sequence interleaves the monomial
    coefficients of Q(y) with a -1 at exponent p/2 and shifts the constant
    by -tE.  For |t| < 1 the count must be exactly m+1 with endpoint signs
    (-1)^[p/2] and (-1)^([p/2]+m+1).
    """
    cfg = cfg or DEFAULT_CONFIG
    if problem.kind is not ProblemKind.POWER:
        raise InvalidProblemError("sign pattern applies to the power problem")
    m = problem.degree
    if m > 16:
        raise PrecisionBudgetError(
            "monomial conversion is limited to degree 16; conditioning grows "
            "exponentially"
        )
    with cfg.workprec(extra=cfg.mantissa_bits):
        t = as_mpf(t)
        if not abs(t) < 1:
            raise InvalidProblemError("t must lie in (-1, 1)")
        p = as_mpf(problem.p)
        mono = _monomial_coefficients(sol.coeffs, sol.interval, cfg)
        mono[0] -= t * sol.error
        half_p = p / 2
        entries = [(mp.mpf(j), c) for j, c in enumerate(mono)]
        entries.append((half_p, mp.mpf(-1)))
        entries.sort(key=lambda e: e[0])
        exps, vals = zip(*entries)
        signs = tuple(1 if v > 0 else (-1 if v < 0 else 0) for v in vals)
        nz = [s for s in signs if s != 0]
        changes = sum(1 for x, y in zip(nz, nz[1:]) if x != y)
        floor_half = int(mp.floor(half_p))
        expected_first = 1 if floor_half % 2 == 0 else -1
        expected_last = 1 if (floor_half + m + 1) % 2 == 0 else -1
        return SignPatternReport(
            t=t,
            exponents=exps,
            signs=signs,
            sign_changes=changes,
            expected_changes=m + 1,
            first_sign=nz[0] if nz else 0,
            last_sign=nz[-1] if nz else 0,
            expected_first=expected_first,
            expected_last=expected_last,
        )


@dataclass(frozen=True)
class ProfileDistanceRow:
    degree: int
    sup_distance: object
    lambda_at_sup: object


def profile_convergence(
    family: ProblemKind,
    params: dict,
    m_list,
    lambda_grid,
    cfg: PrecisionConfig | None = None,
    *,
    solutions: dict | None = None,
):
    """Sup-distance between rescaled extremal values and the limit profile.

    POWER: (m/a)^(p/2) P(sqrt(a/m) lambda) against the power profile.
    SGN_LAURENT: f(sqrt(2a/(2m-1)) lambda) against the sgn profile.
    solutions, when given, maps m to a pre-solved MinimaxSolution so
    sweeps can reuse solver output across checks.
    """
    cfg = cfg or DEFAULT_CONFIG
    family = ProblemKind(family)
    if family not in (ProblemKind.POWER, ProblemKind.SGN_LAURENT):
        raise InvalidProblemError("profiles exist for the power and sgn families")
    rows = []
    with cfg.workprec():
        lams = [as_mpf(x) for x in lambda_grid]
        a = as_mpf(params["a"])
        for m in sorted(int(m) for m in m_list):
            if family is ProblemKind.POWER:
                p = as_mpf(params["p"])
                problem = build_power_problem(p, a, m)
            else:
                k = params["k"]
                problem = build_sgn_problem(k, a, m)
            if solutions is not None and m in solutions:
                sol = solutions[m]
            else:
                sol = solve(problem, cfg)
            best = mp.mpf(-1)
            best_lam = lams[0]
            for lam in lams:
                if family is ProblemKind.POWER:
                    x = mp.sqrt(a / m) * lam
                    scaled = (mp.mpf(m) / a) ** (p / 2) * eval_solution(sol, problem, x)
                    target = power_limit_profile(p, lam, cfg)
                else:
                    x = mp.sqrt(2 * a / (2 * m - 1)) * lam
                    scaled = eval_solution(sol, problem, x)
                    target = sgn_limit_profile(k, lam, cfg)
                dist = abs(scaled - target)
                if dist > best:
                    best, best_lam = dist, lam
            rows.append(ProfileDistanceRow(degree=m, sup_distance=best, lambda_at_sup=best_lam))
    return tuple(rows)
