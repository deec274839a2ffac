"""Adaptive Gauss-Legendre panel quadrature at arbitrary precision.

Panels are bisected until two successive refinements agree; endpoint power
singularities t^alpha at the origin are removed by substitution before any
panel is laid down.  When m*alpha is an integer for a small m the map
t = u^m makes the integrand analytic at 0 (every exponent used in this
package is a half or quarter integer, so this is the common path); other
exponents fall back to t = u^(1/(1+alpha)), which removes the leading
singularity only.  Integrals over (0, inf) of exponentially decaying
densities are truncated at a tail point chosen from the precision budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from mpmath import mp

from ..errors import QuadratureError
from ..precision import DEFAULT_CONFIG, PrecisionConfig, as_mpf

_node_cache: dict[tuple[int, int], tuple[list, list]] = {}


def _substitution_order(alpha_f: float, limit: int = 12) -> int | None:
    """Smallest m with m*alpha integral, or None if no small m works."""
    for m in range(1, limit + 1):
        if abs(m * alpha_f - round(m * alpha_f)) < 1e-9 * m:
            return m
    return None


def gauss_legendre_nodes(n: int):
    """Nodes and weights of n-point Gauss-Legendre on [-1, 1].

    Computed at the current mpmath precision by Newton iteration on the
    Legendre recurrence, and cached per (precision, n).
    """
    key = (mp.prec, n)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    nodes = [mp.mpf(0)] * n
    weights = [mp.mpf(0)] * n
    one = mp.mpf(1)
    for i in range((n + 1) // 2):
        # Tricomi-style initial guess, then Newton to full precision.
        x = mp.cos(mp.pi * (i + mp.mpf(3) / 4) / (n + mp.mpf(1) / 2))
        for _ in range(mp.prec.bit_length() + 4):
            p_prev, p_cur = one, x
            for j in range(2, n + 1):
                p_prev, p_cur = p_cur, ((2 * j - 1) * x * p_cur - (j - 1) * p_prev) / j
            deriv = n * (x * p_cur - p_prev) / (x * x - 1)
            dx = p_cur / deriv
            x -= dx
            if abs(dx) < mp.mpf(2) ** (-mp.prec + 4) * (abs(x) + 1):
                break
        p_prev, p_cur = one, x
        for j in range(2, n + 1):
            p_prev, p_cur = p_cur, ((2 * j - 1) * x * p_cur - (j - 1) * p_prev) / j
        deriv = n * (x * p_cur - p_prev) / (x * x - 1)
        w = 2 / ((1 - x * x) * deriv * deriv)
        nodes[i], weights[i] = -x, w
        nodes[n - 1 - i], weights[n - 1 - i] = x, w
    _node_cache[key] = (nodes, weights)
    return nodes, weights


def _panel(f, a, b, nodes, weights):
    half = (b - a) / 2
    mid = (a + b) / 2
    total = 0
    for x, w in zip(nodes, weights):
        total += w * f(mid + half * x)
    return total * half


def integrate_finite_err(
    f: Callable,
    lo,
    hi,
    cfg: PrecisionConfig | None = None,
    *,
    alpha=None,
    rel_tol=None,
    max_depth: int | None = None,
    initial_panels: int = 1,
):
    """Integrate f on [lo, hi]; returns (value, error_estimate).

    alpha declares a power singularity f ~ t^alpha at lo (supported for
    lo == 0 only); it is removed by substitution before panels are laid
    down.  Raises QuadratureError when bisection cannot reach the target.
    """
    cfg = cfg or DEFAULT_CONFIG
    with cfg.workprec():
        lo = as_mpf(lo)
        hi = as_mpf(hi)
        if hi <= lo:
            raise ValueError("empty or reversed integration interval")
        if rel_tol is None:
            rel_tol = cfg.rel_tol
        else:
            rel_tol = as_mpf(rel_tol)
        if max_depth is None:
            max_depth = cfg.mantissa_bits + 64
        g = f
        if alpha is not None and as_mpf(alpha) != 0:
            alpha = as_mpf(alpha)
            if alpha <= -1:
                raise ValueError("endpoint exponent must exceed -1")
            if lo != 0:
                raise ValueError("power-singularity removal assumes lo == 0")
            order = _substitution_order(float(alpha))
            if order == 1:
                pass  # alpha is a positive integer: nothing singular to remove
            elif order is not None:
                # t = u^m turns t^alpha dt into u^(m(1+alpha)-1) du with an
                # integer exponent >= 0, so the integrand is analytic at 0.
                hi = hi ** (mp.mpf(1) / order)

                def g(u, _f=f, _m=order):
                    return _f(u**_m) * _m * u ** (_m - 1)

            else:
                beta = 1 / (1 + alpha)
                hi = hi ** (1 + alpha)

                def g(u, _f=f, _beta=beta):
                    t = u**_beta
                    return _f(t) * _beta * t / u

        nodes, weights = gauss_legendre_nodes(cfg.quad_order)
        width = hi - lo
        # Seed panels; the coarse pass also sets the absolute scale.
        stack = []
        scale = mp.mpf(0)
        for i in range(initial_panels):
            a = lo + width * i / initial_panels
            b = lo + width * (i + 1) / initial_panels
            coarse = _panel(g, a, b, nodes, weights)
            scale += abs(coarse)
            stack.append((a, b, coarse, 0))
        scale = max(scale, mp.mpf(2) ** (-cfg.mantissa_bits))
        total = mp.mpf(0)
        err = mp.mpf(0)
        while stack:
            a, b, coarse, depth = stack.pop()
            m = (a + b) / 2
            left = _panel(g, a, m, nodes, weights)
            right = _panel(g, m, b, nodes, weights)
            fine = left + right
            delta = abs(fine - coarse)
            budget = rel_tol * scale * ((b - a) / width)
            if delta <= budget or depth >= max_depth:
                if depth >= max_depth and delta > budget:
                    raise QuadratureError(
                        f"no convergence after {max_depth} bisections on "
                        f"[{mp.nstr(a, 8)}, {mp.nstr(b, 8)}] (delta {mp.nstr(delta, 4)})"
                    )
                total += fine
                err += delta
                scale = max(scale, abs(total))
            else:
                stack.append((a, m, left, depth + 1))
                stack.append((m, b, right, depth + 1))
        return total, err


def integrate_finite(f, lo, hi, cfg=None, *, alpha=None, rel_tol=None, max_depth=None):
    """Adaptive panel integral of f over [lo, hi]; see integrate_finite_err."""
    value, _ = integrate_finite_err(
        f, lo, hi, cfg, alpha=alpha, rel_tol=rel_tol, max_depth=max_depth
    )
    return value


@dataclass(frozen=True)
class DensitySpec:
    """A density on (0, inf).

    values(t) behaves like t^exponent_alpha near 0; decay records whether
    an exp(-t) factor bounds the tail ("exponential") or nothing does
    ("none"), in which case half-line integrals are refused.
    """

    exponent_alpha: float
    values: Callable = field(repr=False)
    decay: str = "exponential"

    def __post_init__(self):
        if float(self.exponent_alpha) <= -1:
            raise ValueError("exponent_alpha must exceed -1 for integrability")
        if self.decay not in ("exponential", "none"):
            raise ValueError("decay must be 'exponential' or 'none'")

    def __call__(self, t):
        return self.values(t)


def gamma_density(alpha, scale=1) -> DensitySpec:
    """The density scale * t^alpha * exp(-t)."""

    alpha_f = float(alpha)
    half_steps = 2 * alpha_f
    if abs(half_steps - round(half_steps)) < 1e-12:
        # Half-integer exponents dominate this package; sqrt plus an
        # integer power is several times cheaper than a general pow.
        h = int(round(half_steps))
        if h % 2 == 0:

            def values(t, _s=scale, _n=h // 2):
                return as_mpf(_s) * t**_n * mp.exp(-t)

        else:

            def values(t, _s=scale, _h=h):
                return as_mpf(_s) * mp.sqrt(t) ** _h * mp.exp(-t)

    else:

        def values(t, _a=alpha, _s=scale):
            return as_mpf(_s) * t ** as_mpf(_a) * mp.exp(-t)

    return DensitySpec(exponent_alpha=alpha_f, values=values)


def integrate_halfline(density, cfg: PrecisionConfig | None = None, *, weight=None, rel_tol=None):
    """Integral of density(t) * weight(t) over (0, inf).

    The density must decay like exp(-t); the integral is truncated at
    cfg.tail_cut_for(alpha), beyond which the discarded mass is below the
    working precision.  weight, when given, must stay polynomially bounded.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not isinstance(density, DensitySpec):
        raise TypeError("integrate_halfline expects a DensitySpec")
    if density.decay != "exponential":
        raise QuadratureError("cannot truncate a half-line integral without decay")
    with cfg.workprec():
        cut = cfg.tail_cut_for(density.exponent_alpha)
        if weight is None:
            f = density
        else:

            def f(t, _d=density, _w=weight):
                return _d(t) * _w(t)

        return integrate_finite(
            f, 0, cut, cfg, alpha=density.exponent_alpha, rel_tol=rel_tol
        )
