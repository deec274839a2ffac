"""Phase continuation, curve identity, coefficient signs, limit profiles."""

import pytest
from mpmath import mp

from bernlab.curveverify import (
    PhaseTrace,
    curve_residuals,
    profile_convergence,
    reconstruct_phase,
    sign_pattern_check,
)
from bernlab.errors import (
    BranchTrackingError,
    InvalidProblemError,
    PrecisionBudgetError,
)
from bernlab.remez import ProblemKind, build_power_problem, build_sgn_problem, solve


def _log_grid(lo, hi, count):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    return [lo * (hi / lo) ** (mp.mpf(i) / (count - 1)) for i in range(count)]


@pytest.fixture(scope="module")
def traced(cfg192):
    problem = build_power_problem("1.5", "0.5", 8)
    with cfg192.workprec():
        sol = solve(problem, cfg192)
        ys = _log_grid("0.01", "3", 25)
        trace = reconstruct_phase(sol, problem, ys, cfg192)
    return problem, sol, trace


def test_trace_lives_in_the_half_strip(traced, cfg192):
    problem, _, trace = traced
    with cfg192.workprec():
        assert all(v > 0 for v in trace.v)
        top = (problem.m + 1) * mp.pi
        assert all(0 < u < top for u in trace.u)
        # Along the imaginary axis the phase climbs from the u = 0 edge and
        # levels off at pi.
        assert trace.u[0] < trace.u[-1]
        assert abs(trace.u[-1] - mp.pi) < mp.mpf("0.05")


def test_curve_identity_residuals_are_rounding_level(traced, cfg192):
    _, sol, trace = traced
    with cfg192.workprec():
        res = curve_residuals(trace, sol.error, "1.5", cfg192)
        assert max(abs(r) for r in res) < mp.mpf("1e-6")


def test_residuals_shrink_with_more_precision(traced, cfg256):
    # The identity holds exactly on the curve, so the residual must track
    # the arithmetic, not the problem: more bits, smaller residual.
    problem, sol192, trace192 = traced
    with mp.workprec(200):
        res192 = curve_residuals(trace192, sol192.error, "1.5")
        worst192 = max(abs(r) for r in res192)
    with cfg256.workprec():
        sol = solve(problem, cfg256)
        ys = _log_grid("0.01", "3", 25)
        trace = reconstruct_phase(sol, problem, ys, cfg256)
        res = curve_residuals(trace, sol.error, "1.5", cfg256)
        worst256 = max(abs(r) for r in res)
        assert worst256 < worst192 / mp.mpf(10) ** 6


def test_trace_is_grid_independent_on_shared_nodes(cfg256):
    problem = build_power_problem("1.5", "0.5", 8)
    with cfg256.workprec():
        sol = solve(problem, cfg256)
        coarse = reconstruct_phase(sol, problem, _log_grid("0.01", "3", 9), cfg256)
        fine = reconstruct_phase(sol, problem, _log_grid("0.01", "3", 17), cfg256)
        for i in range(9):
            assert abs(coarse.u[i] - fine.u[2 * i]) < mp.mpf("1e-30")
            assert abs(coarse.v[i] - fine.v[2 * i]) < mp.mpf("1e-30")


def test_seed_too_far_from_edge_is_refused(cfg256):
    problem = build_power_problem("1.5", "0.5", 8)
    with cfg256.workprec():
        sol = solve(problem, cfg256)
        with pytest.raises(BranchTrackingError):
            reconstruct_phase(sol, problem, [mp.mpf("2.4"), mp.mpf(3)], cfg256)


def test_trace_validation():
    with pytest.raises(InvalidProblemError):
        PhaseTrace(y_grid=(2, 1), u=(0.1, 0.2), v=(1, 1), branch_windings=(0, 0))
    with pytest.raises(InvalidProblemError):
        PhaseTrace(y_grid=(1, 2), u=(0.1, 0.2), v=(1, -1), branch_windings=(0, 0))
    with pytest.raises(InvalidProblemError):
        PhaseTrace(y_grid=(1, 2), u=(0.1, 2.0), v=(1, 1), branch_windings=(0, 0))


def test_curve_equation_rejects_even_p(traced, cfg192):
    _, sol, trace = traced
    with pytest.raises(InvalidProblemError):
        curve_residuals(trace, sol.error, 2, cfg192)


def test_sign_pattern_counts(cfg256):
    # Coefficients of P(x) - x^p - tE ordered by exponent flip sign exactly
    # m+1 times, with endpoint signs set by floor(p/2) and parity.
    with cfg256.workprec():
        for m in (3, 5):
            problem = build_power_problem("1.5", "0.5", m)
            sol = solve(problem, cfg256)
            for t in [mp.mpf(j) / 6 - mp.mpf("0.833333") for j in range(11)]:
                report = sign_pattern_check(sol, problem, t, cfg256)
                assert report.sign_changes == m + 1
                assert report.passed


def test_sign_pattern_at_extreme_t(cfg256):
    with cfg256.workprec():
        problem = build_power_problem("1.5", "0.5", 3)
        sol = solve(problem, cfg256)
        edge = 1 - mp.mpf("1e-6")
        assert sign_pattern_check(sol, problem, edge, cfg256).passed
        assert sign_pattern_check(sol, problem, -edge, cfg256).passed
        with pytest.raises(InvalidProblemError):
            sign_pattern_check(sol, problem, 1, cfg256)


def test_sign_pattern_degree_cap(cfg256):
    problem = build_power_problem("1.5", "0.5", 17)
    with cfg256.workprec():
        sol = solve(problem, cfg256)
        with pytest.raises(PrecisionBudgetError):
            sign_pattern_check(sol, problem, 0, cfg256)


def test_sign_pattern_needs_power_family(cfg256):
    problem = build_sgn_problem(1, "0.5", 3)
    with cfg256.workprec():
        sol = solve(problem, cfg256)
        with pytest.raises(InvalidProblemError):
            sign_pattern_check(sol, problem, 0, cfg256)
        with pytest.raises(InvalidProblemError):
            reconstruct_phase(sol, problem, [mp.mpf("0.1")], cfg256)


@pytest.mark.parametrize(
    "family,params",
    [
        (ProblemKind.POWER, {"p": 1, "a": "0.5"}),
        (ProblemKind.SGN_LAURENT, {"k": 1, "a": "0.5"}),
    ],
)
def test_profiles_converge_with_degree(cfg256, family, params):
    lams = ["0.25", "0.5", "1", "1.5", "2", "2.5", "3"]
    rows = profile_convergence(family, params, [4, 8], lams, cfg256)
    with cfg256.workprec():
        assert rows[0].degree == 4 and rows[1].degree == 8
        assert rows[1].sup_distance < rows[0].sup_distance


def test_profiles_accept_preseeded_solutions(solved_power, cfg256):
    problem, sol = solved_power[10]
    lams = ["0.5", "1", "2"]
    rows = profile_convergence(
        ProblemKind.POWER,
        {"p": "1.5", "a": "0.5"},
        [10],
        lams,
        cfg256,
        solutions={10: sol},
    )
    with cfg256.workprec():
        assert rows[0].degree == 10
        assert rows[0].sup_distance > 0


def test_profiles_reject_akhiezer(cfg256):
    with pytest.raises(InvalidProblemError):
        profile_convergence(ProblemKind.AKHIEZER, {"s": 1, "b": 2}, [3], ["1"], cfg256)
