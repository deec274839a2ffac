"""Closed-form error predictors for the two-interval minimax problems and
computed-vs-predicted sweep reports.

Conventions: the |x|^p problem uses polynomials of degree n = 2m on
[-1,-a] u [a,1]; the sgn problem uses Laurent polynomials of degree
(2k-1, 2m-1); the shifted-power problem approximates (b+x)^(-s) on [-1,1]
by polynomials of degree l.  The sgn error L relates to a slit height B
through L = 1/cosh(B).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from mpmath import mp

from .errors import InvalidProblemError
from .precision import DEFAULT_CONFIG, PrecisionConfig, as_mpf
from .remez import (
    ProblemKind,
    build_akhiezer_problem,
    build_power_problem,
    build_sgn_problem,
    solve,
)
from .specialfn import log_gamma


def _validate_power_p(p):
    p_f = float(as_mpf(p))
    if p_f <= 0 or (p_f == int(p_f) and int(p_f) % 2 == 0):
        raise InvalidProblemError("p must be positive and not an even integer")


def _validate_a(a):
    a_f = float(as_mpf(a))
    if not 0 < a_f < 1:
        raise InvalidProblemError("a must lie in (0, 1)")


def abs_gamma(x, cfg: PrecisionConfig | None = None):
    """|Gamma(x)| for non-pole x, through the signed log-gamma."""
    cfg = cfg or DEFAULT_CONFIG
    with cfg.workprec():
        return mp.exp(log_gamma(x, cfg).log_abs)


def predict_power_error(p, a, m: int, cfg: PrecisionConfig | None = None):
    """Predicted minimax error of |x|^p on [-1,-a] u [a,1] at degree 2m:

        ((1-a)/(1+a))^(m+1) * m^(-p/2-1) * a^(p/2-1) (1+a)^2 / (2 |Gamma(-p/2)|).
    """
    cfg = cfg or DEFAULT_CONFIG
    _validate_power_p(p)
    _validate_a(a)
    if m < 1:
        raise InvalidProblemError("m must be a positive integer")
    with cfg.workprec():
        p = as_mpf(p)
        a = as_mpf(a)
        ratio = (1 - a) / (1 + a)
        const = a ** (p / 2 - 1) * (1 + a) ** 2 / (2 * abs_gamma(-p / 2, cfg))
        return ratio ** (m + 1) * mp.mpf(m) ** (-p / 2 - 1) * const


def predict_power_error_alt(p, a, m: int, cfg: PrecisionConfig | None = None):
    """Equivalent form of predict_power_error written with the limit-map
    constants:

        (a/m)^(p/2) ((1-a)/(1+a))^m (1-a^2) / (2 a m |Gamma(-p/2)|).

    Algebraically identical to predict_power_error at every m; both are
    kept so finite-size comparisons stay transparent.
    """
    cfg = cfg or DEFAULT_CONFIG
    _validate_power_p(p)
    _validate_a(a)
    if m < 1:
        raise InvalidProblemError("m must be a positive integer")
    with cfg.workprec():
        p = as_mpf(p)
        a = as_mpf(a)
        m_ = mp.mpf(m)
        return (
            (a / m_) ** (p / 2)
            * ((1 - a) / (1 + a)) ** m_
            * (1 - a * a)
            / (2 * a * m_ * abs_gamma(-p / 2, cfg))
        )


def predict_slit_height(k: int, a, m: int, cfg: PrecisionConfig | None = None):
    """Predicted slit height B for the sgn problem of index (k, m):

        (m-1/2) log((1+a)/(1-a)) + (k+1/2) log(2m-1)
            + (k+1/2) log(2a/(1-a^2)) - log(Gamma(k+1/2)/pi).

    The constant inside the second log is 2a/(1-a^2): the height grows
    like (k+1/2) log(2 A) with A = a(2m-1)/(1-a^2).  The sgn minimax
    error then satisfies L ~ 1/cosh(B).
    """
    cfg = cfg or DEFAULT_CONFIG
    if not isinstance(k, int) or k < 1:
        raise InvalidProblemError("k must be a positive integer")
    if m < 1:
        raise InvalidProblemError("m must be a positive integer")
    _validate_a(a)
    with cfg.workprec():
        a = as_mpf(a)
        half = mp.mpf(1) / 2
        return (
            (m - half) * mp.log((1 + a) / (1 - a))
            + (k + half) * mp.log(2 * m - 1)
            + (k + half) * mp.log(2 * a / (1 - a * a))
            - (log_gamma(k + half, cfg).log_abs - mp.log(mp.pi))
        )


def slit_height_from_error(error, cfg: PrecisionConfig | None = None):
    """Invert L = 1/cosh(B): the slit height realized by a sgn error L."""
    cfg = cfg or DEFAULT_CONFIG
    with cfg.workprec():
        error = as_mpf(error)
        if not 0 < error < 1:
            raise InvalidProblemError("error must lie in (0, 1)")
        return mp.acosh(1 / error)


def akhiezer_b_from_a(a):
    """b = (1+a^2)/(1-a^2), the pole offset matching interval gap a."""
    _validate_a(a)
    a = as_mpf(a)
    return (1 + a * a) / (1 - a * a)


def akhiezer_a_from_b(b):
    """Inverse of akhiezer_b_from_a: a = sqrt((b-1)/(b+1)) for b > 1."""
    b = as_mpf(b)
    if b <= 1:
        raise InvalidProblemError("b must exceed 1")
    return mp.sqrt((b - 1) / (b + 1))


def akhiezer_convert(s, a, l: int, shifted_error):
    """Two-interval error from a shifted-power error, exactly:

        E_{2l}(-2s, a) = (1+b)^s * E_l[(b+x)^(-s)],  b = (1+a^2)/(1-a^2).

    The substitution y = (b+x)/(b+1) maps [-1,1] onto [a^2,1], so this
    identity holds at every degree l, not just asymptotically.
    """
    if float(as_mpf(s)) == 0:
        raise InvalidProblemError("s must be nonzero")
    _validate_a(a)
    s = as_mpf(s)
    b = akhiezer_b_from_a(a)
    return (1 + b) ** s * as_mpf(shifted_error)


def predict_akhiezer_error(s, b, l: int, cfg: PrecisionConfig | None = None):
    """Predicted minimax error of (b+x)^(-s) on [-1,1] at degree l:

        (l^(s-1)/|Gamma(s)|) (b - sqrt(b^2-1))^l / (b^2-1)^((s+1)/2).
    """
    cfg = cfg or DEFAULT_CONFIG
    if float(as_mpf(s)) == 0:
        raise InvalidProblemError("s must be nonzero")
    if float(as_mpf(b)) <= 1:
        raise InvalidProblemError("b must exceed 1")
    if l < 1:
        raise InvalidProblemError("l must be a positive integer")
    with cfg.workprec():
        s = as_mpf(s)
        b = as_mpf(b)
        root = mp.sqrt(b * b - 1)
        return (
            mp.mpf(l) ** (s - 1)
            / abs_gamma(s, cfg)
            * (b - root) ** l
            / root ** (s + 1)
        )


@dataclass(frozen=True)
class AsymptoticsReport:
    """Computed-vs-predicted sweep for one problem family.

    rows hold (m, computed, predicted, ratio); for the sgn family the
    compared quantity is the slit height B rather than the error itself,
    and gap = computed - predicted is the figure of merit.  log_computed
    keeps the errors comparable across many orders of magnitude.
    """

    family: ProblemKind
    parameters: dict
    rows: tuple = field(default_factory=tuple)
    log_computed: tuple = field(default_factory=tuple)
    log_predicted: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ms = [row[0] for row in self.rows]
        if ms != sorted(ms):
            raise InvalidProblemError("sweep rows must be ordered by degree")
        for _, computed, predicted, ratio in self.rows:
            if not (mp.isfinite(ratio) and ratio > 0):
                raise InvalidProblemError("ratios must be finite and positive")

    @property
    def final_ratio(self):
        return self.rows[-1][3]

    @property
    def final_gap(self):
        _, computed, predicted, _ = self.rows[-1]
        return computed - predicted

    @property
    def monotone(self) -> bool:
        """Whether |log ratio| is non-increasing over the second half of
        the sweep (the theory fixes the limit, not an approach rate, so
        only the tail is judged)."""
        devs = [abs(mp.log(row[3])) for row in self.rows]
        tail = devs[len(devs) // 2 :]
        return all(x >= y - mp.mpf(10) ** -30 for x, y in zip(tail, tail[1:]))


def _solve_one(args):
    family, params, m, bits = args
    cfg = PrecisionConfig(mantissa_bits=bits)
    if family is ProblemKind.POWER:
        problem = build_power_problem(params["p"], params["a"], m)
    elif family is ProblemKind.SGN_LAURENT:
        problem = build_sgn_problem(params["k"], params["a"], m)
    else:
        problem = build_akhiezer_problem(params["s"], params["b"], m)
    return m, solve(problem, cfg).error


def compare(
    family: ProblemKind,
    parameters: dict,
    degrees,
    cfg: PrecisionConfig | None = None,
    *,
    jobs: int = 1,
) -> AsymptoticsReport:
    """Sweep the solver over degrees and compare with the predictor.

    parameters: {p, a} for POWER, {k, a} for SGN_LAURENT, {s, b} for
    AKHIEZER.  Solver runs are independent, so jobs > 1 distributes them
    over processes.  Solver errors propagate.
    """
    cfg = cfg or DEFAULT_CONFIG
    family = ProblemKind(family)
    degrees = sorted(int(m) for m in degrees)
    if not degrees:
        raise InvalidProblemError("need at least one degree")
    tasks = [(family, parameters, m, cfg.mantissa_bits) for m in degrees]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = dict(pool.map(_solve_one, tasks))
    else:
        solved = dict(map(_solve_one, tasks))

    rows = []
    log_c = []
    log_p = []
    with cfg.workprec():
        for m in degrees:
            err = solved[m]
            if family is ProblemKind.POWER:
                computed = err
                predicted = predict_power_error(parameters["p"], parameters["a"], m, cfg)
            elif family is ProblemKind.SGN_LAURENT:
                computed = slit_height_from_error(err, cfg)
                predicted = predict_slit_height(parameters["k"], parameters["a"], m, cfg)
            else:
                computed = err
                predicted = predict_akhiezer_error(parameters["s"], parameters["b"], m, cfg)
            rows.append((m, computed, predicted, computed / predicted))
            log_c.append(mp.log(err))
            log_p.append(mp.log(abs(predicted)))
    return AsymptoticsReport(
        family=family,
        parameters=dict(parameters),
        rows=tuple(rows),
        log_computed=tuple(log_c),
        log_predicted=tuple(log_p),
    )
