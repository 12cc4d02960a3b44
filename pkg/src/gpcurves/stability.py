"""Stability constants for Gaussian persistence curves and their numerical check.

Each bound has the form  ||G_C - G_D||_1 <= constant * W1(C, D) + additive.
Matching-dependent quantities are read off the optimal matching returned by
:func:`gpcurves.metrics.wasserstein1`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .curves import GpcModel, l1_distance, l1_norm_closed
from .diagrams import PersistenceDiagram, joint_min_lifespan, min_lifespan, total_lifespan
from .errors import HypothesisViolated, WeightKindMismatch
from .kernels import SQRT_PI, QuadratureSpec
from .metrics import Matching, partition, wasserstein1
from .weights import (
    LIFESPAN,
    UNWEIGHTED,
    ResolvedWeights,
    WeightKind,
    WeightSpec,
    cross_lipschitz_bound,
    resolve,
)

REL_TOL = 1e-6
ABS_TOL = 1e-9


class Theorem(enum.Enum):
    UNWEIGHTED_A = "A"
    GENERAL_WEIGHTS_B = "B"
    LIPSCHITZ_J = "J"
    LIFESPAN_G = "G"
    NORMALIZED_LIFESPAN_P = "P"


DEFAULT_WEIGHT = {
    Theorem.UNWEIGHTED_A: UNWEIGHTED,
    Theorem.GENERAL_WEIGHTS_B: UNWEIGHTED,
    Theorem.LIPSCHITZ_J: UNWEIGHTED,
    Theorem.LIFESPAN_G: LIFESPAN,
    Theorem.NORMALIZED_LIFESPAN_P: WeightSpec(WeightKind.NORMALIZED_LIFE),
}


@dataclass(frozen=True)
class StabilityReport:
    theorem: Theorem
    constant: float
    additive_term: float
    w1: float
    l1_dist: float
    bound_value: float
    holds: bool
    slack: float
    inputs_digest: str

    def as_row(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "constant": self.constant,
            "additive_term": self.additive_term,
            "w1": self.w1,
            "l1_dist": self.l1_dist,
            "bound_value": self.bound_value,
            "holds": self.holds,
            "slack": self.slack,
            "inputs": self.inputs_digest,
        }


class PartitionStats(NamedTuple):
    m_c: float
    m_d: float
    m_e: float
    delta_e: float
    m_gamma: float
    g_dprime_l1: float


def _inv(delta: float) -> float:
    # 1/min(empty) = 0
    return 0.0 if math.isinf(delta) else 1.0 / delta


def partition_stats(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    m: Matching,
    wc: ResolvedWeights,
    wd: ResolvedWeights,
) -> PartitionStats:
    part = partition(C, D, m)
    e_weights = [wc.values[i] for i in part.e_from_c] + [wd.values[j] for j in part.e_from_d]
    m_e = float(np.max(np.abs(e_weights))) if e_weights else 0.0
    m_gamma = max((abs(wc.values[i] - wd.values[j]) for i, j in part.pair_indices), default=0.0)
    g_dp = l1_norm_closed(GpcModel.build(part.d_prime, UNWEIGHTED, sigma))
    return PartitionStats(wc.max_abs, wd.max_abs, m_e, min_lifespan(part.e), float(m_gamma), g_dp)


def constant_unweighted(C: PersistenceDiagram, D: PersistenceDiagram, sigma: float) -> float:
    """A = max{2, 2 (1 + sigma / (sqrt(pi) delta_CD))}."""
    delta = joint_min_lifespan(C, D)
    return max(2.0, 2.0 * (1.0 + sigma / (SQRT_PI * delta)))


def _matching(C, D, m):
    return wasserstein1(C, D)[1] if m is None else m


def constants_general(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    spec_c: WeightSpec = UNWEIGHTED,
    spec_d: WeightSpec = UNWEIGHTED,
    m: Optional[Matching] = None,
):
    """B = max{2 M_C, 2 M_E (1 + sigma/(sqrt(pi) delta_E))} and the additive M_gamma ||G_D'||_1."""
    m = _matching(C, D, m)
    st = partition_stats(C, D, sigma, m, resolve(C, spec_c), resolve(D, spec_d))
    B = max(2.0 * st.m_c, 2.0 * st.m_e * (1.0 + sigma * _inv(st.delta_e) / SQRT_PI))
    return B, st.m_gamma * st.g_dprime_l1


def constant_lipschitz(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    K: float,
    m: Optional[Matching] = None,
    spec_c: WeightSpec = UNWEIGHTED,
    spec_d: WeightSpec = UNWEIGHTED,
    combine: str = "max",
) -> float:
    """J = max{2 M_C, 2 M_E (1 + sigma/(sqrt(pi) delta_E)), K ||G_D'||_1}.

    ``combine="sum"`` instead charges the matched pairs 2 M_C + K ||G_D'||_1,
    which is what the triangle-inequality argument actually delivers; the
    ``"max"`` form can fail for close diagrams with large weights.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    m = _matching(C, D, m)
    st = partition_stats(C, D, sigma, m, resolve(C, spec_c), resolve(D, spec_d))
    e_term = 2.0 * st.m_e * (1.0 + sigma * _inv(st.delta_e) / SQRT_PI)
    if combine == "sum":
        return max(2.0 * st.m_c + K * st.g_dprime_l1, e_term)
    return max(2.0 * st.m_c, e_term, K * st.g_dprime_l1)


def constant_lifespan(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    m: Optional[Matching] = None,
    spec_c: WeightSpec = LIFESPAN,
    spec_d: WeightSpec = LIFESPAN,
    combine: str = "max",
) -> float:
    """Constant for raw lifespan weights k(b, d) = d - b.

    ``"max"``: max{2 M_C, ||G_D'||_1, 2 (M_E + s), 2 + 2 s} with s = sigma/sqrt(pi).
    ``"sum"``: max{2 M_C + 2 ||G_D'||_1, 2 (M_E + s), 2 + 2 s}, using that the
    lifespan is 2-Lipschitz for the L-infinity norm.
    """
    if spec_c.kind is not WeightKind.LIFESPAN or spec_d.kind is not WeightKind.LIFESPAN:
        raise WeightKindMismatch("lifespan bound needs raw lifespan weights on both diagrams")
    m = _matching(C, D, m)
    st = partition_stats(C, D, sigma, m, resolve(C, spec_c), resolve(D, spec_d))
    s = sigma / SQRT_PI
    e_terms = (2.0 * (st.m_e + s), 2.0 + 2.0 * s)
    if combine == "sum":
        return max(2.0 * st.m_c + 2.0 * st.g_dprime_l1, *e_terms)
    return max(2.0 * st.m_c, st.g_dprime_l1, *e_terms)


def constant_normalized(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    m: Optional[Matching] = None,
) -> float:
    """Constant for lifespan weights divided by the diagram's total lifespan.

    Requires both total lifespans to be at least 1.
    """
    lc, ld = total_lifespan(C), total_lifespan(D)
    if lc < 1 or ld < 1:
        raise HypothesisViolated(f"total lifespans must be >= 1, got {lc:.6g} and {ld:.6g}")
    spec = WeightSpec(WeightKind.NORMALIZED_LIFE)
    m = _matching(C, D, m)
    st = partition_stats(C, D, sigma, m, resolve(C, spec), resolve(D, spec))
    s = sigma / SQRT_PI
    return max(2.0, 2.0 * (st.m_e + s), 2.0 + 2.0 * s, 4.0 + 4.0 * s / min_lifespan(D))


def _check_weights(theorem: Theorem, spec_c: WeightSpec, spec_d: WeightSpec):
    for spec in (spec_c, spec_d):
        if spec.kind in (WeightKind.MIDLIFE, WeightKind.MULTIPLICATIVE_LIFE):
            raise HypothesisViolated(f"weight {spec.token!r} does not vanish on the diagonal")
    need = {
        Theorem.UNWEIGHTED_A: WeightKind.UNWEIGHTED,
        Theorem.LIFESPAN_G: WeightKind.LIFESPAN,
        Theorem.NORMALIZED_LIFESPAN_P: WeightKind.NORMALIZED_LIFE,
    }.get(theorem)
    if need is not None and (spec_c.kind is not need or spec_d.kind is not need):
        raise WeightKindMismatch(f"theorem {theorem.value} needs {need.value!r} weights")


def verify(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    theorem: Theorem,
    spec_c: Optional[WeightSpec] = None,
    spec_d: Optional[WeightSpec] = None,
    K: Optional[float] = None,
    quad: QuadratureSpec = QuadratureSpec(),
    combine: str = "max",
) -> StabilityReport:
    """Compute W1, the theorem's constant, and the quadrature L1 distance.

    For the Lipschitz bound, ``K`` defaults to :func:`cross_lipschitz_bound`;
    if that is unknown the matching-local constant M_gamma / W1 is used, which
    is the only place the proof consumes K.

    ``combine`` selects the stated (``"max"``) or additive (``"sum"``) form of
    the J and G constants; other theorems ignore it.
    """
    if combine not in ("max", "sum"):
        raise ValueError(f"combine must be 'max' or 'sum', got {combine!r}")
    theorem = Theorem(theorem)
    spec_c = spec_c or DEFAULT_WEIGHT[theorem]
    spec_d = spec_d or spec_c
    _check_weights(theorem, spec_c, spec_d)

    w1, m = wasserstein1(C, D)
    additive = 0.0
    k_note = ""
    if theorem is Theorem.UNWEIGHTED_A:
        const = constant_unweighted(C, D, sigma)
    elif theorem is Theorem.GENERAL_WEIGHTS_B:
        const, additive = constants_general(C, D, sigma, spec_c, spec_d, m)
    elif theorem is Theorem.LIPSCHITZ_J:
        if K is None:
            K = cross_lipschitz_bound(spec_c, spec_d, C, D)
            k_note = "static"
        else:
            k_note = "given"
        if K is None:
            st = partition_stats(C, D, sigma, m, resolve(C, spec_c), resolve(D, spec_d))
            K = st.m_gamma / w1 if w1 > 0 else 0.0
            k_note = "matching-local"
        const = constant_lipschitz(C, D, sigma, K, m, spec_c, spec_d, combine)
        k_note = f";K={K:.10g}({k_note})"
    elif theorem is Theorem.LIFESPAN_G:
        const = constant_lifespan(C, D, sigma, m, spec_c, spec_d, combine)
    else:
        const = constant_normalized(C, D, sigma, m)

    mc = GpcModel.build(C, spec_c, sigma)
    md = GpcModel.build(D, spec_d, sigma)
    dist = l1_distance(mc, md, quad)
    bound = const * w1 + additive
    holds = dist <= bound + REL_TOL * bound + ABS_TOL
    digest = (
        f"sigma={sigma:.10g};weights={spec_c.token},{spec_d.token}{k_note};combine={combine};"
        f"C={C.digest()};D={D.digest()};tiebreak=lsa-row-major"
    )
    return StabilityReport(theorem, const, additive, w1, dist, bound, bool(holds), bound - dist, digest)


class TinyBarScenario(NamedTuple):
    l1_dist: float
    w1: float
    lower_bound: float


def tiny_bar_scenario(
    C: PersistenceDiagram,
    k: int,
    bar_length: float,
    sigma: float,
    quad: QuadratureSpec = QuadratureSpec(),
) -> TinyBarScenario:
    """Add ``k`` short bars to C and measure what happens to the unweighted curve.

    W1 shrinks with the bar length while the curve distance stays near
    sigma k / sqrt(pi); this is why the unweighted constant must depend on the
    minimum lifespan.
    """
    x0 = (C.d_max + 5.0 * sigma) if len(C) else 0.0
    E = PersistenceDiagram(tuple((x0, x0 + bar_length) for _ in range(k)))
    D = C + E
    w1, _ = wasserstein1(C, D)
    dist = l1_distance(GpcModel.build(C, sigma=sigma), GpcModel.build(D, sigma=sigma), quad)
    return TinyBarScenario(dist, w1, sigma * k / SQRT_PI)
