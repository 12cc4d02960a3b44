import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gpcurves.diagrams import PersistenceDiagram
from gpcurves.errors import DegenerateNormalizer, InvalidWeight
from gpcurves.weights import (
    WeightKind,
    WeightSpec,
    cross_lipschitz_bound,
    resolve,
)

from conftest import diagrams

P = PersistenceDiagram


def test_life_example():
    w = resolve(P(((0, 1), (0, 3))), WeightSpec(WeightKind.LIFE))
    assert list(w.values) == [0.25, 0.75]
    assert w.max_abs == 0.75
    assert w.normalizer == 4


def test_midlife_example():
    w = resolve(P(((1, 3),)), WeightSpec(WeightKind.MIDLIFE))
    assert list(w.values) == [1.0]
    assert w.non_vanishing_on_diagonal


def test_entropy_example():
    w = resolve(P(((0, 1), (0, 1))), WeightSpec(WeightKind.LIFE_ENTROPY))
    assert np.allclose(w.values, 0.5 * math.log(2), atol=1e-15)
    assert w.values[0] == pytest.approx(0.34657359027997264, rel=1e-15)


def test_unweighted_and_lifespan():
    D = P(((0, 1), (2, 5)))
    assert list(resolve(D).values) == [1, 1]
    assert list(resolve(D, WeightSpec(WeightKind.LIFESPAN)).values) == [1, 3]


def test_multiplicative_life():
    w = resolve(P(((1, 3), (2, 3))), WeightSpec(WeightKind.MULTIPLICATIVE_LIFE))
    assert list(w.values) == [3.0, 1.5]
    with pytest.raises(DegenerateNormalizer):
        resolve(P(((0, 3),)), WeightSpec(WeightKind.MULTIPLICATIVE_LIFE))


def test_midlife_degenerate():
    with pytest.raises(DegenerateNormalizer):
        resolve(P(((-1, 1),)), WeightSpec(WeightKind.MIDLIFE))


@pytest.mark.parametrize("kind", list(WeightKind)[:-1])
def test_empty_diagram(kind):
    w = resolve(P(), WeightSpec(kind))
    assert len(w) == 0 and w.max_abs == 0


def test_custom_validation():
    with pytest.raises(InvalidWeight):
        WeightSpec(WeightKind.CUSTOM)
    with pytest.raises(InvalidWeight):
        WeightSpec.custom(lambda b, d: 1.0)
    spec = WeightSpec.custom(lambda b, d: (d - b) ** 2, lipschitz=None)
    assert list(resolve(P(((0, 2),)), spec).values) == [4.0]


def test_token_round_trip():
    for k in WeightKind:
        assert WeightKind.from_token(k.value) is k
    assert WeightSpec("life").kind is WeightKind.LIFE


def test_counterexample_weight_collapse():
    spec = WeightSpec(WeightKind.LIFE)
    assert list(resolve(P(((1, 4),)), spec).values) == [1.0]
    assert list(resolve(P(((1, 4), (1, 4))), spec).values) == [0.5, 0.5]


@pytest.mark.parametrize("kind", [WeightKind.LIFE, WeightKind.LIFE_ENTROPY, WeightKind.NORMALIZED_LIFE,
                                  WeightKind.LIFESPAN])
def test_vanishing_near_diagonal(kind):
    D0 = P(((0, 1), (5, 7)))
    for eps in (1e-3, 1e-6, 1e-9):
        D = D0 + P(((2, 2 + eps),))
        w = resolve(D, WeightSpec(kind)).values
        i = [k for k, p in enumerate(D) if p.birth == 2][0]
        L = 3 + eps
        if kind is WeightKind.LIFE_ENTROPY:
            # -p log p -> 0, slower than p
            assert w[i] <= -(eps / L) * math.log(eps / L) + 1e-15
        else:
            assert w[i] <= eps / min(L, 1) + 1e-15


@given(diagrams(max_size=10).filter(len))
def test_life_probabilities_sum_to_one(D):
    p = resolve(D, WeightSpec(WeightKind.LIFE)).values
    assert math.fsum(p) == pytest.approx(1, abs=1e-12)


@given(diagrams(max_size=10), st.sampled_from(["none", "life", "entropy", "normlife", "lifespan"]))
def test_permutation_equivariance(D, token):
    pts = list(D.points)
    random.Random(1).shuffle(pts)
    a = resolve(D, WeightSpec(token)).values
    b = resolve(P(tuple(pts)), WeightSpec(token)).values
    assert np.array_equal(a, b)


def test_max_abs_matches_values(rng):
    for _ in range(20):
        a = np.sort(rng.uniform(-3, 3, (5, 2)), axis=1)
        spec = WeightSpec.custom(lambda b, d: math.sin(d - b) - 0.5 * (d - b))
        w = resolve(P.from_array(a), spec)
        assert w.max_abs == np.abs(w.values).max()


def test_cross_lipschitz():
    U = WeightSpec()
    assert cross_lipschitz_bound(U, U) == 0
    fn = lambda b, d: d - b
    ck = WeightSpec.custom(fn, lipschitz=1.0)
    assert cross_lipschitz_bound(ck, ck) == 1
    life = WeightSpec(WeightKind.LIFE)
    C, D = P(((0, 1),)), P(((0, 2),))
    assert cross_lipschitz_bound(life, life, C, D) is None
    assert cross_lipschitz_bound(life, life, C, P(((3, 4),))) == 2.0
    assert cross_lipschitz_bound(U, life) is None
    assert cross_lipschitz_bound(WeightSpec("entropy"), WeightSpec("entropy")) is None
