"""Adaptive quadrature: exact integrals, singular endpoints, error reporting."""

import pytest
from mpmath import mp

from bernlab.errors import QuadratureError
from bernlab.specialfn import (
    DensitySpec,
    gamma_density,
    gauss_legendre_nodes,
    integrate_finite,
    integrate_finite_err,
    integrate_halfline,
)

GAMMA_3_2 = "0.886226925452758013649083741670572591398774728061193564106904"


def test_gauss_legendre_exactness(cfg128):
    # n-point rule integrates degree 2n-1 exactly; weights sum to 2.
    with cfg128.workprec():
        nodes, weights = gauss_legendre_nodes(8)
        assert abs(sum(weights) - 2) < mp.mpf("1e-35")
        total = sum(w * x**14 for x, w in zip(nodes, weights))
        assert abs(total - mp.mpf(2) / 15) < mp.mpf("1e-35")


def test_unit_interval_constant(cfg256):
    with cfg256.workprec():
        got = integrate_finite(lambda t: mp.mpf(1), 0, 1, cfg256)
        assert abs(got - 1) < mp.mpf("1e-70")


def test_inverse_sqrt_singularity(cfg256):
    with cfg256.workprec():
        got = integrate_finite(lambda t: 1 / mp.sqrt(t), 0, 1, cfg256, alpha="-0.5")
        assert abs(got - 2) < mp.mpf("1e-70")


def test_quarter_power_substitution(cfg256):
    # alpha = 1/4 exercises the t = u^4 analytic-substitution path.
    with cfg256.workprec():
        got = integrate_finite(
            lambda t: t ** mp.mpf("0.25"), 0, 1, cfg256, alpha="0.25"
        )
        assert abs(got - mp.mpf(4) / 5) < mp.mpf("1e-70")


def test_irrational_power_fallback(cfg256):
    # No small m makes m*alpha integral, so the leading-order map is used.
    with cfg256.workprec():
        alpha = 1 / mp.sqrt(2)
        got = integrate_finite(lambda t: t**alpha, 0, 1, cfg256, alpha=alpha)
        assert abs(got - 1 / (1 + alpha)) < mp.mpf("1e-70")


def test_halfline_gamma_three_halves(cfg256):
    with cfg256.workprec():
        got = integrate_halfline(gamma_density("0.5"), cfg256)
        ref = mp.mpf(GAMMA_3_2)
        assert abs(got - ref) / ref < mp.mpf("1e-55")


def test_halfline_with_weight(cfg256):
    # int_0^inf sqrt(t) e^-t * t dt = Gamma(5/2) = (3/2) Gamma(3/2).
    with cfg256.workprec():
        got = integrate_halfline(gamma_density("0.5"), cfg256, weight=lambda t: t)
        ref = mp.mpf(GAMMA_3_2) * mp.mpf(3) / 2
        assert abs(got - ref) / ref < mp.mpf("1e-55")


def test_error_estimate_shrinks_with_finer_panels(cfg256):
    with cfg256.workprec():
        f = lambda t: mp.exp(t) * mp.cos(3 * t)
        v1, e1 = integrate_finite_err(f, 0, 2, cfg256)
        v2, e2 = integrate_finite_err(f, 0, 2, cfg256, initial_panels=4)
        assert abs(v1 - v2) < mp.mpf("1e-70")
        assert e2 <= e1 * (1 + mp.mpf("1e-20"))


def test_error_estimate_bounds_true_error(cfg256):
    with cfg256.workprec():
        exact = mp.sin(mp.mpf(4)) / 2  # int_0^2 cos(2t) dt
        got, err = integrate_finite_err(lambda t: mp.cos(2 * t), 0, 2, cfg256)
        assert abs(got - exact) < max(err * 10, mp.mpf("1e-75"))


def test_nonconvergent_integrand_raises(cfg256):
    # A jump at an irrational point defeats bisection; a small depth cap
    # must surface QuadratureError instead of silently returning.
    with cfg256.workprec():
        step = lambda t: mp.mpf(1) if t > 1 / mp.pi else mp.mpf(0)
        with pytest.raises(QuadratureError):
            integrate_finite(step, 0, 1, cfg256, max_depth=8)


def test_reversed_interval_rejected(cfg256):
    with pytest.raises(ValueError):
        integrate_finite(lambda t: t, 1, 0, cfg256)


def test_halfline_requires_decay(cfg256):
    slow = DensitySpec(0.0, lambda t: 1 / (1 + t * t), decay="none")
    with pytest.raises(QuadratureError):
        integrate_halfline(slow, cfg256)


def test_density_validation():
    with pytest.raises(ValueError):
        DensitySpec(-1.5, lambda t: t)
    with pytest.raises(ValueError):
        DensitySpec(0.0, lambda t: t, decay="algebraic")
