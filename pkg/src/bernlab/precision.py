"""Shared precision configuration.

All numerical routines in the package take a PrecisionConfig and run inside
``cfg.workprec()``.  Guard bits on top of ``mantissa_bits`` absorb roundoff so
that results are good to roughly 2^(-mantissa_bits/2) relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp

GUARD_BITS = 32

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision and quadrature knobs.

    mantissa_bits: binary mantissa length, at least 64.
    quad_order: Gauss-Legendre order per panel; derived from mantissa_bits
        when omitted.
    pv_epsilon: half-width of the window around a principal-value
        singularity that is integrated in regularized form.
    tail_cut: truncation point for integrals over (0, inf) of densities
        with exp(-t) decay; derived from mantissa_bits when omitted.
    """

    mantissa_bits: int = 256
    quad_order: int | None = None
    pv_epsilon: float = 0.25
    tail_cut: float | None = None

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be at least 64")
        if self.quad_order is None:
            object.__setattr__(self, "quad_order", max(20, self.mantissa_bits // 6))
        if self.quad_order < 4:
            raise ValueError("quad_order must be at least 4")
        if not self.pv_epsilon > 0:
            raise ValueError("pv_epsilon must be positive")
        if self.tail_cut is None:
            object.__setattr__(self, "tail_cut", self.tail_cut_for(0.0))
        if self.tail_cut <= 0:
            raise ValueError("tail_cut must be positive")

    @property
    def rel_tol(self):
        """Advertised relative accuracy, 2^(-mantissa_bits/2)."""
        return mp.mpf(2) ** (-(self.mantissa_bits // 2))

    @property
    def decimal_digits(self) -> int:
        return max(1, int(self.mantissa_bits * math.log10(2.0)))

    def workprec(self, extra: int = 0):
        """mpmath context manager at mantissa_bits plus guard bits."""
        return mp.workprec(self.mantissa_bits + GUARD_BITS + extra)

    def tail_cut_for(self, alpha) -> float:
        """Truncation point for a density behaving like t^alpha * exp(-t).

        Chosen so the discarded tail is below the working precision:
        max(50, mantissa_bits*ln2 + 20*|alpha|).
        """
        return max(50.0, self.mantissa_bits * _LN2 + 20.0 * abs(float(alpha)))


DEFAULT_CONFIG = PrecisionConfig()


def as_mpf(value):
    """Convert a number or decimal string to mpf at the current precision.

    Strings go through mpmath's decimal parser, so CLI inputs round-trip
    without a float detour.
    """
    if isinstance(value, str):
        return mp.mpf(value)
    return mp.mpf(value)
