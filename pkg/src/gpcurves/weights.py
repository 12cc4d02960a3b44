"""Weighting functions resolved against a concrete diagram."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .diagrams import PersistenceDiagram, total_lifespan
from .errors import DegenerateNormalizer, InvalidWeight


class WeightKind(enum.Enum):
    UNWEIGHTED = "none"
    LIFE = "life"
    MIDLIFE = "midlife"
    LIFE_ENTROPY = "entropy"
    MULTIPLICATIVE_LIFE = "mullife"
    NORMALIZED_LIFE = "normlife"
    # raw d - b, the weight the lifespan stability bound is stated for
    LIFESPAN = "lifespan"
    CUSTOM = "custom"

    @classmethod
    def from_token(cls, token: str) -> "WeightKind":
        for k in cls:
            if k.value == token:
                return k
        raise ValueError(f"unknown weight token {token!r}")


NON_VANISHING = frozenset({WeightKind.MIDLIFE, WeightKind.MULTIPLICATIVE_LIFE})

_PROBE = np.linspace(-10.0, 10.0, 41)


@dataclass(frozen=True)
class WeightSpec:
    kind: WeightKind = WeightKind.UNWEIGHTED
    custom_fn: Optional[Callable[[float, float], float]] = None
    custom_lipschitz: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", WeightKind.from_token(self.kind))
        if (self.kind is WeightKind.CUSTOM) != (self.custom_fn is not None):
            raise InvalidWeight("custom_fn must be given exactly when kind is CUSTOM")
        if self.custom_fn is not None:
            bad = [b for b in _PROBE if abs(self.custom_fn(float(b), float(b))) > 1e-12]
            if bad:
                raise InvalidWeight(f"custom weight does not vanish on the diagonal at b={bad[0]}")
        if self.custom_lipschitz is not None and self.custom_lipschitz < 0:
            raise InvalidWeight("Lipschitz constant must be nonnegative")

    @classmethod
    def custom(cls, fn, lipschitz=None) -> "WeightSpec":
        return cls(WeightKind.CUSTOM, fn, lipschitz)

    @property
    def token(self) -> str:
        return self.kind.value


UNWEIGHTED = WeightSpec()
LIFESPAN = WeightSpec(WeightKind.LIFESPAN)


@dataclass(frozen=True)
class ResolvedWeights:
    values: np.ndarray
    max_abs: float
    normalizer: float
    kind: WeightKind
    non_vanishing_on_diagonal: bool = False

    def __len__(self):
        return len(self.values)

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.values >= 0))


def _entropy(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = -p[pos] * np.log(p[pos])
    return out


def resolve(D: PersistenceDiagram, spec: WeightSpec = UNWEIGHTED) -> ResolvedWeights:
    """Per-point weights aligned with the canonical point order of ``D``."""
    kind = spec.kind
    b, d = D.births, D.deaths
    life = d - b
    normalizer = 1.0

    if kind is WeightKind.UNWEIGHTED:
        values = np.ones(len(D))
    elif kind is WeightKind.LIFESPAN:
        values = life.copy()
    elif kind in (WeightKind.LIFE, WeightKind.NORMALIZED_LIFE, WeightKind.LIFE_ENTROPY):
        normalizer = total_lifespan(D)
        if len(D) and not normalizer > 0:
            raise DegenerateNormalizer("total lifespan is zero")
        p = life / normalizer if len(D) else life
        values = _entropy(p) if kind is WeightKind.LIFE_ENTROPY else p
    elif kind is WeightKind.MIDLIFE:
        normalizer = math.fsum(b) + math.fsum(d)
        if len(D) and normalizer == 0:
            raise DegenerateNormalizer("sum of births and deaths is zero")
        values = (b + d) / normalizer if len(D) else np.zeros(0)
    elif kind is WeightKind.MULTIPLICATIVE_LIFE:
        if np.any(b <= 0):
            raise DegenerateNormalizer("multiplicative life needs strictly positive births")
        values = d / b
    elif kind is WeightKind.CUSTOM:
        values = np.array([float(spec.custom_fn(p.birth, p.death)) for p in D], dtype=float)
    else:  # pragma: no cover
        raise AssertionError(kind)

    values = np.asarray(values, dtype=float)
    max_abs = float(np.abs(values).max()) if len(values) else 0.0
    return ResolvedWeights(values, max_abs, float(normalizer), kind, kind in NON_VANISHING)


def cross_lipschitz_bound(
    spec_c: WeightSpec,
    spec_d: WeightSpec,
    C: Optional[PersistenceDiagram] = None,
    D: Optional[PersistenceDiagram] = None,
) -> Optional[float]:
    """A constant K with |k_C(p) - k_D(q)| <= K |p - q|_inf, when one is known.

    Life-type weights need both diagrams, since the normalizers must agree.
    Returns ``None`` when no such constant is available.
    """
    if spec_c.kind is not spec_d.kind:
        return None
    kind = spec_c.kind
    if kind is WeightKind.UNWEIGHTED:
        return 0.0
    if kind is WeightKind.LIFESPAN:
        # |(d-b) - (d'-b')| <= 2 |(b,d) - (b',d')|_inf
        return 2.0
    if kind in (WeightKind.LIFE, WeightKind.NORMALIZED_LIFE):
        if C is None or D is None:
            return None
        lc, ld = total_lifespan(C), total_lifespan(D)
        if lc != ld or lc <= 0:
            return None
        return 2.0 / lc
    if kind is WeightKind.CUSTOM:
        if spec_c.custom_fn is not spec_d.custom_fn:
            return None
        ks = [k for k in (spec_c.custom_lipschitz, spec_d.custom_lipschitz) if k is not None]
        return max(ks) if ks else None
    return None
