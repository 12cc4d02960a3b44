"""Standard normal primitives and closed-form Gaussian integrals.

Every closed form here has a quadrature twin (:func:`integrate_l1`) used by
the test suite to check it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .errors import NonConvergence, OrderTooLarge

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_TINY = np.finfo(float).tiny

MAX_MOMENT_ORDER = 64


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for truncated-domain adaptive quadrature.

    ``support_padding`` is measured in multiples of sigma. With the default of
    10 the neglected tail is below ``n * Phi(-10) * sigma`` per side.
    """

    relative_tolerance: float = 1e-9
    support_padding: float = 10.0
    absolute_tolerance: float = 1e-13
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise ValueError("relative_tolerance must be positive")
        if not self.support_padding >= 6:
            raise ValueError("support_padding must be at least 6")
        if self.absolute_tolerance < 0:
            raise ValueError("absolute_tolerance must be nonnegative")


def std_normal_pdf(x):
    x = np.asarray(x, dtype=float)
    out = INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return float(out) if out.ndim == 0 else out


def std_normal_cdf(x):
    """Phi(x) via the complementary error function; subnormal tails flush to 0."""
    x = np.asarray(x, dtype=float)
    out = special.ndtr(x)
    out = np.where(out < _TINY, 0.0, out)
    return float(out) if out.ndim == 0 else out


def cdf_product_integral(sigma: float) -> float:
    """Integral over the real line of Phi((b-t)/sigma) * Phi((t-b)/sigma).

    Equals sigma / sqrt(pi) for every real b.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return sigma / SQRT_PI


def cdf_shift_l1(d: float, d2: float, sigma: float) -> float:
    """L1 distance between two shifted normal CDFs of common scale: |d - d2|."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return abs(d - d2)


def _v_phi_plus_pdf(v: float) -> float:
    # antiderivative of Phi
    return v * std_normal_cdf(v) + std_normal_pdf(v)


def cdf_diff_product_integral(a: float, b1: float, b2: float, b3: float) -> float:
    """Closed form of  int Phi(a t + b1) (Phi(a t + b2) - Phi(a t + b3)) dt.

    Uses ``1/|a|`` so the result is also correct for negative slopes.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if b2 == b3:
        return 0.0
    hi = (b1 - b2) / SQRT2
    lo = (b1 - b3) / SQRT2
    return -SQRT2 / abs(a) * (_v_phi_plus_pdf(hi) - _v_phi_plus_pdf(lo))


def double_factorial(k: int) -> int:
    """(k)!! with the convention (-1)!! = 0!! = 1."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def normal_raw_moment(n: int, a: float, sigma: float, max_order: int = MAX_MOMENT_ORDER) -> float:
    """E[X**n] for X ~ N(a, sigma**2), by the binomial/double-factorial expansion."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds cap {max_order}")
    terms = [
        math.comb(n, k) * a ** (n - k) * sigma**k * double_factorial(k - 1)
        for k in range(0, n + 1, 2)
    ]
    return math.fsum(terms)


def _panels(lo: float, hi: float, knots: Iterable[float], max_width: Optional[float]) -> np.ndarray:
    edges = [lo, hi]
    edges += [k for k in knots if lo < k < hi]
    if max_width is not None and max_width > 0:
        n = int(math.ceil((hi - lo) / max_width))
        edges += list(np.linspace(lo, hi, n + 1))
    return np.unique(np.asarray(edges, dtype=float))


def integrate_l1(
    f: Callable[[float], float],
    support: Sequence[float],
    spec: QuadratureSpec = QuadratureSpec(),
    knots: Iterable[float] = (),
    max_panel: Optional[float] = None,
) -> float:
    """Adaptive quadrature of |f| over ``support``.

    The interval is first cut at ``knots`` and into panels no wider than
    ``max_panel``; each panel is integrated by adaptive Gauss-Kronrod. Cutting
    at the kernel centres keeps narrow bumps from being stepped over.

    Raises
    ------
    NonConvergence
        If any panel fails to reach the requested tolerance.
    """
    lo, hi = float(support[0]), float(support[1])
    if hi < lo:
        raise ValueError("support must be an increasing interval")
    if hi == lo:
        return 0.0
    edges = _panels(lo, hi, knots, max_panel)
    npan = len(edges) - 1
    epsabs = spec.absolute_tolerance / npan

    def g(t):
        return abs(f(t))

    total = []
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        for x0, x1 in zip(edges[:-1], edges[1:]):
            try:
                val, _ = integrate.quad(
                    g, x0, x1, epsabs=epsabs, epsrel=spec.relative_tolerance,
                    limit=spec.max_subdivisions,
                )
            except integrate.IntegrationWarning as exc:
                raise NonConvergence(f"quadrature on [{x0}, {x1}] failed: {exc}") from None
            total.append(val)
    return math.fsum(total)
