"""Persistence surfaces and Gaussian persistence curves.

The curve is evaluated through its CDF form

    G(t) = sum_i k_i * Phi((t - b_i) / sigma) * Phi((d_i - t) / sigma),

which is the integral of the isotropic Gaussian surface over the box
{x < t, y > t}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagrams import PersistenceDiagram
from .errors import SigmaMismatch
from .kernels import SQRT2, QuadratureSpec, integrate_l1, std_normal_cdf, std_normal_pdf
from .weights import UNWEIGHTED, ResolvedWeights, WeightSpec, resolve

# panel width for quadrature, in units of sigma
_PANEL_SIGMAS = 2.0


@dataclass(frozen=True)
class GpcModel:
    diagram: PersistenceDiagram
    weights: ResolvedWeights
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if len(self.weights) != len(self.diagram):
            raise ValueError("weights are not aligned with the diagram")

    @classmethod
    def build(cls, diagram: PersistenceDiagram, spec: WeightSpec = UNWEIGHTED, sigma: float = 1.0):
        return cls(diagram, resolve(diagram, spec), float(sigma))

    @property
    def weight_kind(self) -> str:
        return self.weights.kind.value

    def support(self, padding: float):
        if self.diagram.is_empty():
            return (0.0, 0.0)
        pad = padding * self.sigma
        return (self.diagram.b_min - pad, self.diagram.d_max + pad)


@dataclass(frozen=True)
class CurveSamples:
    t_values: np.ndarray
    values: np.ndarray
    sigma: float
    weight_kind: str
    diagram_digest: str = ""

    def __post_init__(self):
        if len(self.t_values) != len(self.values):
            raise ValueError("t_values and values differ in length")
        if np.any(np.diff(self.t_values) <= 0):
            raise ValueError("t_values must be strictly increasing")

    def to_csv(self) -> str:
        lines = [
            f"# sigma={self.sigma:.10g} weight={self.weight_kind} diagram={self.diagram_digest}",
            "t,value",
        ]
        lines += [f"{t:.10g},{v:.10g}" for t, v in zip(self.t_values, self.values)]
        return "\n".join(lines) + "\n"


def surface_eval(m: GpcModel, x, y):
    """Weighted sum of isotropic bivariate normal densities at (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = m.sigma
    dx = (x[..., None] - m.diagram.births) / s
    dy = (y[..., None] - m.diagram.deaths) / s
    dens = np.exp(-0.5 * (dx * dx + dy * dy)) / (2.0 * math.pi * s * s)
    out = dens @ m.weights.values if len(m.diagram) else np.zeros(x.shape)
    return float(out) if np.ndim(out) == 0 else out


def gpc_eval(m: GpcModel, t):
    """Evaluate the curve at scalar or array ``t``."""
    t = np.asarray(t, dtype=float)
    if m.diagram.is_empty():
        out = np.zeros(t.shape)
    else:
        s = m.sigma
        lo = std_normal_cdf((t[..., None] - m.diagram.births) / s)
        hi = std_normal_cdf((m.diagram.deaths - t[..., None]) / s)
        out = (lo * hi) @ m.weights.values
    return float(out) if out.ndim == 0 else out


def gpc_sample(m: GpcModel, t_min: float, t_max: float, n: int) -> CurveSamples:
    if not t_min < t_max:
        raise ValueError("need t_min < t_max")
    if n < 2:
        raise ValueError("need at least two samples")
    ts = np.linspace(t_min, t_max, n)
    return CurveSamples(ts, np.asarray(gpc_eval(m, ts)), m.sigma, m.weight_kind, m.diagram.digest())


def _point_l1(life: np.ndarray, sigma: float) -> np.ndarray:
    u = life / (SQRT2 * sigma)
    return life * std_normal_cdf(u) + SQRT2 * sigma * std_normal_pdf(u)


def l1_norm_closed(m: GpcModel) -> float:
    """Closed-form L1 norm, sum_i |k_i| [ l_i Phi(l_i/(sqrt2 s)) + sqrt2 s phi(l_i/(sqrt2 s)) ].

    Exact when all weights are nonnegative; otherwise only an upper bound
    (see :func:`closed_form_is_exact`).
    """
    if m.diagram.is_empty():
        return 0.0
    terms = np.abs(m.weights.values) * _point_l1(m.diagram.lifespans, m.sigma)
    return math.fsum(terms)


def closed_form_is_exact(m: GpcModel) -> bool:
    return m.weights.nonnegative


def _knots(*models: GpcModel):
    ks = []
    for m in models:
        ks.extend(m.diagram.births)
        ks.extend(m.diagram.deaths)
    return ks


def l1_norm_quadrature(m: GpcModel, spec: QuadratureSpec = QuadratureSpec()) -> float:
    if m.diagram.is_empty():
        return 0.0
    return integrate_l1(
        lambda t: gpc_eval(m, t), m.support(spec.support_padding), spec,
        knots=_knots(m), max_panel=_PANEL_SIGMAS * m.sigma,
    )


def l1_norm(m: GpcModel, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Exact L1 norm: closed form for nonnegative weights, quadrature otherwise."""
    return l1_norm_closed(m) if closed_form_is_exact(m) else l1_norm_quadrature(m, spec)


def l1_distance(m1: GpcModel, m2: GpcModel, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Quadrature of |G_1 - G_2| over the padded union support."""
    if m1.sigma != m2.sigma:
        raise SigmaMismatch(f"sigma {m1.sigma} != {m2.sigma}")
    parts = [m.support(spec.support_padding) for m in (m1, m2) if not m.diagram.is_empty()]
    if not parts:
        return 0.0
    lo = min(p[0] for p in parts)
    hi = max(p[1] for p in parts)
    return integrate_l1(
        lambda t: gpc_eval(m1, t) - gpc_eval(m2, t), (lo, hi), spec,
        knots=_knots(m1, m2), max_panel=_PANEL_SIGMAS * m1.sigma,
    )


def surface_grid(m: GpcModel, x_range, y_range, nx: int, ny: int):
    """Sample the surface on an endpoint-inclusive nx-by-ny grid.

    Returns ``(xs, ys, values)`` with ``values[i, j] = rho(xs[i], ys[j])``.
    """
    xs = np.linspace(x_range[0], x_range[1], nx)
    ys = np.linspace(y_range[0], y_range[1], ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return xs, ys, np.asarray(surface_eval(m, X, Y))
