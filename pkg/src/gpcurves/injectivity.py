"""Moment fingerprints of diagrams and surfaces, and tail witnesses for curves.

Unweighted persistence surfaces determine their diagram: the mixed moments
of the surface are a triangular transform of the diagram's power sums
sum b^m1 d^m2, and those power sums pin the multiset down. The routines here
turn that into a finite, numerically honest probe.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from .curves import GpcModel, gpc_eval
from .diagrams import PersistenceDiagram
from .errors import OrderTooLarge, WitnessSaturated
from .kernels import normal_raw_moment

MAX_ORDER = 32
REL_TOL = 1e-9
ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class MomentTable:
    orders: Tuple[Tuple[int, int], ...]
    values: Tuple[float, ...]

    def to_csv(self) -> str:
        rows = ["m1,m2,value"] + [f"{a},{b},{v:.10g}" for (a, b), v in zip(self.orders, self.values)]
        return "\n".join(rows) + "\n"


class Verdict(enum.Enum):
    IDENTICAL = "identical"
    DISTINGUISHED = "distinguished"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProbeResult:
    verdict: Verdict
    order: Optional[Tuple[int, int]] = None
    max_order: int = 0

    def line(self) -> str:
        if self.verdict is Verdict.DISTINGUISHED:
            return f"distinguished,{self.order[0]},{self.order[1]}"
        if self.verdict is Verdict.INCONCLUSIVE:
            return f"inconclusive,{self.max_order}"
        return "identical"


class Side(enum.Enum):
    PLUS_INFINITY = "+inf"
    MINUS_INFINITY = "-inf"


class TailWitness(NamedTuple):
    t: float
    side: Side
    dominant: str  # "C" or "D"


def graded_orders(max_order: int) -> Iterator[Tuple[int, int]]:
    """(m1, m2) by increasing total degree, then by m1."""
    for total in range(max_order + 1):
        for m1 in range(total + 1):
            yield m1, total - m1


def _check_order(m1: int, m2: int, cap: int):
    if m1 < 0 or m2 < 0:
        raise ValueError("moment orders must be nonnegative")
    if m1 > cap or m2 > cap:
        raise OrderTooLarge(f"order ({m1}, {m2}) exceeds cap {cap}")


def moment_sum(D: PersistenceDiagram, m1: int, m2: int, max_order: int = MAX_ORDER) -> float:
    """Compensated sum of b**m1 * d**m2 over the diagram."""
    _check_order(m1, m2, max_order)
    return math.fsum(p.birth**m1 * p.death**m2 for p in D)


def moment_table(D: PersistenceDiagram, max_order: int) -> MomentTable:
    orders = tuple(graded_orders(max_order))
    return MomentTable(orders, tuple(moment_sum(D, a, b, max(max_order, MAX_ORDER)) for a, b in orders))


def _shared_rescale(C: PersistenceDiagram, D: PersistenceDiagram):
    coords = np.concatenate([C.births, C.deaths, D.births, D.deaths])
    if coords.size == 0:
        return C, D, 1.0
    lo, hi = float(coords.min()), float(coords.max())
    scale = hi - lo if hi > lo else 1.0

    def tr(X):
        return PersistenceDiagram(tuple(((p.birth - lo) / scale, (p.death - lo) / scale) for p in X))

    return tr(C), tr(D), scale


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= max(ABS_FLOOR, REL_TOL * max(abs(a), abs(b)))


def moments_equal(
    C: PersistenceDiagram, D: PersistenceDiagram, max_order: int
) -> Optional[Tuple[int, int]]:
    """First (m1, m2) with m1 + m2 <= max_order whose power sums differ.

    Both diagrams go through the same affine map onto [0, 1] first, so high
    orders stay finite. Returns ``None`` if every order agrees.
    """
    if max_order > MAX_ORDER:
        raise OrderTooLarge(f"max_order {max_order} exceeds cap {MAX_ORDER}")
    Cs, Ds, _ = _shared_rescale(C, D)
    for m1, m2 in graded_orders(max_order):
        if not _close(moment_sum(Cs, m1, m2), moment_sum(Ds, m1, m2)):
            return m1, m2
    return None


def surface_moment_from_projection(
    D: PersistenceDiagram, sigma: float, axis: str, n: int, max_order: int = MAX_ORDER
) -> float:
    """n-th moment of the unweighted surface's marginal along one axis.

    ``axis`` is ``"birth"`` or ``"death"``. Closed form: each point contributes
    the n-th raw moment of N(coordinate, sigma^2).
    """
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds cap {max_order}")
    coords = {"birth": D.births, "death": D.deaths}[axis]
    return math.fsum(normal_raw_moment(n, float(a), sigma) for a in coords)


def surface_moment(D: PersistenceDiagram, sigma: float, m1: int, m2: int, weights=None) -> float:
    """Mixed moment  int int x^m1 y^m2 rho(x, y) dx dy  of the (weighted) surface."""
    _check_order(m1, m2, MAX_ORDER)
    w = np.ones(len(D)) if weights is None else np.asarray(weights, dtype=float)
    return math.fsum(
        wi * normal_raw_moment(m1, p.birth, sigma) * normal_raw_moment(m2, p.death, sigma)
        for wi, p in zip(w, D)
    )


def injectivity_probe(
    C: PersistenceDiagram, D: PersistenceDiagram, sigma: float, max_order: int = 16
) -> ProbeResult:
    """Try to separate two unweighted surfaces by their mixed moments.

    Moments are computed in closed form from the surfaces (not the diagrams),
    after a shared affine rescale. ``Inconclusive`` means no difference was
    found up to ``max_order``; it is not a claim that the surfaces agree.
    """
    if max_order > MAX_ORDER:
        raise OrderTooLarge(f"max_order {max_order} exceeds cap {MAX_ORDER}")
    if C == D:
        return ProbeResult(Verdict.IDENTICAL, None, max_order)
    Cs, Ds, scale = _shared_rescale(C, D)
    s = sigma / scale
    for m1, m2 in graded_orders(max_order):
        if not _close(surface_moment(Cs, s, m1, m2), surface_moment(Ds, s, m1, m2)):
            return ProbeResult(Verdict.DISTINGUISHED, (m1, m2), max_order)
    return ProbeResult(Verdict.INCONCLUSIVE, None, max_order)


def tail_dominance_witness(
    C: PersistenceDiagram,
    D: PersistenceDiagram,
    sigma: float,
    max_steps: int = 100,
    min_gap: float = 1e-12,
) -> Optional[TailWitness]:
    """A point t where one unweighted curve strictly exceeds the other.

    When the largest deaths differ, the curve with the larger one dominates as
    t -> +inf; the scan walks up from the larger d_max in steps of sigma. The
    birth side is handled symmetrically. Returns ``None`` when both extremes
    coincide.

    Raises
    ------
    WitnessSaturated
        If both curves underflow (or the step budget runs out) first.
    """
    if C.is_empty() or D.is_empty():
        raise ValueError("both diagrams must be nonempty")
    mc, md = GpcModel.build(C, sigma=sigma), GpcModel.build(D, sigma=sigma)
    if C.d_max != D.d_max:
        side, sign = Side.PLUS_INFINITY, 1.0
        start = max(C.d_max, D.d_max)
        c_dom = C.d_max > D.d_max
    elif C.b_min != D.b_min:
        side, sign = Side.MINUS_INFINITY, -1.0
        start = min(C.b_min, D.b_min)
        c_dom = C.b_min < D.b_min
    else:
        return None
    hi, lo = (mc, md) if c_dom else (md, mc)
    for k in range(max_steps + 1):
        t = start + sign * k * sigma
        gh, gl = gpc_eval(hi, t), gpc_eval(lo, t)
        if gh - gl >= min_gap:
            return TailWitness(t, side, "C" if c_dom else "D")
        if gh < 1e-300 and gl < 1e-300:
            break
    raise WitnessSaturated(f"no separating point found within {max_steps} steps of {sigma}")
