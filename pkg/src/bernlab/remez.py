"""Weighted Remez exchange on a single interval in a reduced variable.

Three problem families, all reduced to "best degree-n polynomial under a
positive smooth weight on [lo, hi]":

* power: even approximation of |x|^p on [-1,-a] u [a,1]; in y = x^2 the
  target is y^(p/2) with unit weight on [a^2, 1], degree m.
* sgn_laurent: odd Laurent approximation of sgn(x) with powers from
  -(2k-1) to 2m-1; in y = x^2 the deviation is (y^(k-1/2) - P(y)) *
  y^-(k-1/2), degree m+k-1 on [a^2, 1].
* akhiezer: 1/(b+x)^s on [-1, 1], degree l, unit weight.

The equioscillation reference starts at Chebyshev points and is exchanged
globally: all local extrema of the weighted deviation are located by sign
bracketing plus golden-section refinement and replace the whole reference.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from mpmath import mp

from .errors import InvalidProblemError, NonConvergenceError, PrecisionBudgetError
from .precision import DEFAULT_CONFIG, PrecisionConfig, as_mpf

_GOLDEN = None  # set lazily at working precision


class ProblemKind(enum.Enum):
    POWER = "power"
    SGN_LAURENT = "sgn_laurent"
    AKHIEZER = "akhiezer"


@dataclass(frozen=True)
class MinimaxProblem:
    """A weighted polynomial minimax problem in the reduced variable.

    Raw parameters are kept as given (numbers or decimal strings) and
    converted to mpf inside the solver's working precision.
    """

    kind: ProblemKind
    p: object = None
    a: object = None
    k: int | None = None
    m: int | None = None
    s: object = None
    b: object = None
    degree: int = 0
    interval: tuple = (0.0, 1.0)

    def interval_mp(self):
        if self.kind is ProblemKind.AKHIEZER:
            return mp.mpf(-1), mp.mpf(1)
        a = as_mpf(self.a)
        return a * a, mp.mpf(1)

    def target(self, y):
        if self.kind is ProblemKind.POWER:
            return y ** (as_mpf(self.p) / 2)
        if self.kind is ProblemKind.SGN_LAURENT:
            return y ** (mp.mpf(self.k) - mp.mpf(1) / 2)
        return (as_mpf(self.b) + y) ** (-as_mpf(self.s))

    def weight(self, y):
        if self.kind is ProblemKind.SGN_LAURENT:
            return y ** (mp.mpf(1) / 2 - mp.mpf(self.k))
        return mp.mpf(1)

    def alternation_count(self) -> int:
        return self.degree + 2

    def decay_bits(self) -> float:
        """Rough size of -log2(E), used for the precision budget check."""
        if self.kind is ProblemKind.AKHIEZER:
            b = float(as_mpf(self.b))
            return self.degree * math.log2(b + math.sqrt(b * b - 1.0))
        a = float(as_mpf(self.a))
        bits = (self.m or 0) * math.log2((1.0 + a) / (1.0 - a))
        if self.kind is ProblemKind.SGN_LAURENT:
            bits += (self.k + 0.5) * math.log2(max(2.0 * self.m - 1.0, 2.0))
        return bits


def build_power_problem(p, a, m: int) -> MinimaxProblem:
    """Best even approximation of |x|^p on [-1,-a] u [a,1], degree 2m.

    p may be negative (used by the Akhiezer change of variables) but not an
    even integer >= 0, where the target is already a polynomial.
    """
    p_f = float(as_mpf(p))
    a_f = float(as_mpf(a))
    if not 0 < a_f < 1:
        raise InvalidProblemError("a must lie in (0, 1)")
    if p_f == 0 or (p_f > 0 and p_f == int(p_f) and int(p_f) % 2 == 0):
        raise InvalidProblemError("p must not be an even integer (degenerate target)")
    if not isinstance(m, int) or m < 1:
        raise InvalidProblemError("m must be a positive integer")
    if not 2 * m > p_f:
        raise InvalidProblemError("need 2m > p")
    return MinimaxProblem(
        kind=ProblemKind.POWER, p=p, a=a, m=m, degree=m, interval=(a_f * a_f, 1.0)
    )


def build_sgn_problem(k: int, a, m: int) -> MinimaxProblem:
    """Best odd Laurent approximation of sgn(x) on [-1,-a] u [a,1].

    Powers run from -(2k-1) to 2m-1; the reduced problem has degree m+k-1.
    """
    a_f = float(as_mpf(a))
    if not 0 < a_f < 1:
        raise InvalidProblemError("a must lie in (0, 1)")
    if not isinstance(k, int) or k < 1:
        raise InvalidProblemError("k must be a positive integer")
    if not isinstance(m, int) or m < 1:
        raise InvalidProblemError("m must be a positive integer")
    return MinimaxProblem(
        kind=ProblemKind.SGN_LAURENT,
        a=a,
        k=k,
        m=m,
        degree=m + k - 1,
        interval=(a_f * a_f, 1.0),
    )


def build_akhiezer_problem(s, b, degree: int) -> MinimaxProblem:
    """Best degree-l approximation of (b+x)^-s on [-1, 1], b > 1."""
    b_f = float(as_mpf(b))
    s_f = float(as_mpf(s))
    if not b_f > 1:
        raise InvalidProblemError("b must exceed 1")
    if s_f == 0:
        raise InvalidProblemError("s must be nonzero")
    if not isinstance(degree, int) or degree < 1:
        raise InvalidProblemError("degree must be a positive integer")
    return MinimaxProblem(
        kind=ProblemKind.AKHIEZER, s=s, b=b, m=degree, degree=degree, interval=(-1.0, 1.0)
    )


@dataclass(frozen=True)
class MinimaxSolution:
    """Chebyshev-basis coefficients plus the equioscillation certificate."""

    coeffs: tuple
    error: object
    alternation: tuple
    signs: tuple
    iterations: int
    levelling_ratio: object
    interval: tuple

    def degree(self) -> int:
        return len(self.coeffs) - 1


def clenshaw(coeffs, interval, y):
    """Evaluate a Chebyshev series with the given interval mapping at y.

    y may be real or complex, inside or outside the interval.
    """
    lo, hi = interval
    t = (2 * y - (lo + hi)) / (hi - lo)
    b1 = b2 = 0
    two_t = 2 * t
    for c in reversed(coeffs[1:]):
        b1, b2 = two_t * b1 - b2 + c, b1
    return t * b1 - b2 + coeffs[0]


def _chebyshev_row(t, n):
    row = [mp.mpf(1), t]
    for _ in range(2, n + 1):
        row.append(2 * t * row[-1] - row[-2])
    return row[: n + 1]


def _solve_levelling(problem, ref):
    """Polynomial + level E interpolating the alternating conditions on ref."""
    lo, hi = problem.interval_mp()
    n = problem.degree
    size = n + 2
    rows = []
    rhs = []
    for i, y in enumerate(ref):
        t = (2 * y - (lo + hi)) / (hi - lo)
        row = _chebyshev_row(t, n)
        sigma = 1 if i % 2 == 0 else -1
        row.append(sigma / problem.weight(y))
        rows.append(row)
        rhs.append(problem.target(y))
    sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    coeffs = [sol[j] for j in range(size - 1)]
    return coeffs, sol[size - 1]


def _golden_max(fun, a, b, iters):
    """Golden-section maximization of fun on [a, b]."""
    inv_phi = (mp.sqrt(5) - 1) / 2
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = fun(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _max_on_segment(residual, a, b, sign, iters):
    """Location and value of max(sign * residual) on [a, b].

    A coarse scan seeds a golden-section refinement; segment ends are kept
    as candidates so boundary extrema survive.
    """

    def fun(y):
        return sign * residual(y)

    samples = 12
    xs = [a + (b - a) * i / samples for i in range(samples + 1)]
    vals = [fun(x) for x in xs]
    best = max(range(samples + 1), key=lambda i: vals[i])
    left = xs[max(0, best - 1)]
    right = xs[min(samples, best + 1)]
    x_g, f_g = _golden_max(fun, left, right, iters)
    cands = [(xs[best], vals[best]), (x_g, f_g)]
    x_best, f_best = max(cands, key=lambda c: c[1])
    return x_best, sign * f_best


def _locate_extrema(problem, residual, ref, iters):
    """Roots of the residual between reference points, then one extremum
    per root-bounded segment."""
    lo, hi = problem.interval_mp()
    r_ref = [residual(y) for y in ref]
    roots = []
    for i in range(len(ref) - 1):
        a, b, fa, fb = ref[i], ref[i + 1], r_ref[i], r_ref[i + 1]
        if fa == 0:
            roots.append(a)
            continue
        if mp.sign(fa) == mp.sign(fb):
            # Levelling degenerated; let the caller diagnose it.
            raise NonConvergenceError(
                "residual does not alternate on the reference",
                diagnostics={"reference": ref, "values": r_ref},
            )
        for _ in range(80):
            mid = (a + b) / 2
            fm = residual(mid)
            if fm == 0:
                break
            if mp.sign(fm) == mp.sign(fa):
                a, fa = mid, fm
            else:
                b, fb = mid, fm
        roots.append((a + b) / 2)
    bounds = [lo] + roots + [hi]
    points = []
    values = []
    for i in range(len(bounds) - 1):
        sign = mp.sign(r_ref[i])
        x, v = _max_on_segment(residual, bounds[i], bounds[i + 1], sign, iters)
        points.append(x)
        values.append(v)
    return points, values


def solve(
    problem: MinimaxProblem,
    cfg: PrecisionConfig | None = None,
    *,
    initial_reference=None,
    max_iterations: int = 60,
) -> MinimaxSolution:
    """Run the exchange until the deviation levels to the stopping ratio.

    Stops when min|r|/max|r| over the located extrema reaches
    1 - 10^-(digits/4); raises NonConvergenceError on stagnation and
    PrecisionBudgetError when the expected E would drown in roundoff.
    """
    cfg = cfg or DEFAULT_CONFIG
    needed = problem.decay_bits() + 48
    if cfg.mantissa_bits < needed:
        raise PrecisionBudgetError(
            f"predicted deviation needs about {needed:.0f} mantissa bits, "
            f"configured {cfg.mantissa_bits}"
        )
    with cfg.workprec():
        lo, hi = problem.interval_mp()
        n = problem.degree
        count = n + 2
        if initial_reference is None:
            ref = [
                (lo + hi) / 2 - (hi - lo) / 2 * mp.cos(mp.pi * i / (count - 1))
                for i in range(count)
            ]
        else:
            ref = sorted(as_mpf(y) for y in initial_reference)
            if len(ref) != count or ref[0] < lo or ref[-1] > hi:
                raise InvalidProblemError(
                    f"initial reference must be {count} points inside the interval"
                )
        stop_ratio = 1 - mp.mpf(10) ** (-(cfg.decimal_digits / 4))
        golden_iters = int(0.75 * mp.prec) + 24
        tiny = mp.mpf(2) ** (-(mp.prec - 16))
        best_ratio = -1
        stale = 0
        for iteration in range(1, max_iterations + 1):
            coeffs, e_signed = _solve_levelling(problem, ref)

            def residual(y, _c=coeffs):
                return problem.weight(y) * (problem.target(y) - clenshaw(_c, (lo, hi), y))

            scale = max(abs(problem.target(y)) for y in ref)
            if abs(e_signed) <= tiny * scale:
                # Target already in the approximation space.
                return MinimaxSolution(
                    coeffs=tuple(coeffs),
                    error=mp.mpf(0),
                    alternation=tuple(ref),
                    signs=tuple(1 if i % 2 == 0 else -1 for i in range(count)),
                    iterations=iteration,
                    levelling_ratio=mp.mpf(1),
                    interval=(lo, hi),
                )
            points, values = _locate_extrema(problem, residual, ref, golden_iters)
            abs_vals = [abs(v) for v in values]
            ratio = min(abs_vals) / max(abs_vals)
            signs = [mp.sign(v) for v in values]
            for i in range(len(signs) - 1):
                if signs[i] * signs[i + 1] >= 0:
                    raise NonConvergenceError(
                        "exchange produced non-alternating extrema",
                        diagnostics={"points": points, "values": values},
                    )
            ref = points
            if ratio >= stop_ratio:
                return MinimaxSolution(
                    coeffs=tuple(coeffs),
                    error=max(abs_vals),
                    alternation=tuple(points),
                    signs=tuple(int(s) for s in signs),
                    iterations=iteration,
                    levelling_ratio=ratio,
                    interval=(lo, hi),
                )
            if ratio <= best_ratio * (1 + mp.mpf(10) ** (-4)):
                stale += 1
                if stale >= 8:
                    raise NonConvergenceError(
                        "levelling ratio stagnated",
                        diagnostics={"ratio": ratio, "iteration": iteration},
                    )
            else:
                stale = 0
            best_ratio = max(best_ratio, ratio)
        raise NonConvergenceError(
            "exchange did not level within the iteration budget",
            diagnostics={"ratio": best_ratio, "iterations": max_iterations},
        )


def eval_solution(sol: MinimaxSolution, problem: MinimaxProblem, x):
    """Approximant in the original variable: P(x^2), P(x^2)/x^(2k-1), or P(x).

    x may be real or complex (the power families are evaluated through
    y = x^2, so the polynomial part is entire).
    """
    y = x * x if problem.kind is not ProblemKind.AKHIEZER else x
    val = clenshaw(sol.coeffs, sol.interval, y)
    if problem.kind is ProblemKind.SGN_LAURENT:
        return val / x ** (2 * problem.k - 1)
    return val


def reduced_deviation(sol: MinimaxSolution, problem: MinimaxProblem, y):
    """Weighted deviation w(y) * (f(y) - P(y)) in the reduced variable."""
    return problem.weight(y) * (problem.target(y) - clenshaw(sol.coeffs, sol.interval, y))
