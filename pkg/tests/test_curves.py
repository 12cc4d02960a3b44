import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, optimize

from gpcurves.curves import (
    CurveSamples,
    GpcModel,
    closed_form_is_exact,
    gpc_eval,
    gpc_sample,
    l1_distance,
    l1_norm,
    l1_norm_closed,
    l1_norm_quadrature,
    surface_eval,
)
from gpcurves.diagrams import PersistenceDiagram, min_lifespan, total_lifespan
from gpcurves.errors import SigmaMismatch
from gpcurves.kernels import std_normal_cdf
from gpcurves.weights import WeightKind, WeightSpec

from conftest import diagrams, random_diagram

P = PersistenceDiagram
SINGLE = P(((0, 1),))
# 50-digit oracle: Phi(1/sqrt2) + sqrt2 phi(1/sqrt2) = 1.19964122837424566...
SINGLE_NORM = 1.1996412283742457


def model(D, kind="none", sigma=1.0):
    return GpcModel.build(D, WeightSpec(kind), sigma)


def test_surface_examples():
    assert surface_eval(model(P()), 0.3, 2.0) == 0
    assert surface_eval(model(SINGLE), 0, 1) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    dup = P(((0, 1), (0, 1)))
    assert surface_eval(model(dup, "life"), 0, 1) == pytest.approx(1 / (2 * math.pi), rel=1e-15)


def test_surface_integrates_to_total_weight():
    D = P(((0, 1), (2, 4)))
    m = model(D, "lifespan", 0.7)
    val, _ = integrate.dblquad(lambda y, x: surface_eval(m, x, y), -8, 10, -8, 12, epsabs=1e-10)
    assert val == pytest.approx(3.0, rel=1e-7)


def test_gpc_examples():
    # values from the 50-digit Phi oracle
    assert gpc_eval(model(SINGLE), 0.5) == pytest.approx(0.47812033535111607, abs=1e-12)
    assert gpc_eval(model(P(((0, 2),))), 1.0) == pytest.approx(0.707860981737141, abs=1e-12)
    m = model(P(((0, 1), (3, 9))))
    assert gpc_eval(m, 1e3) == 0 and gpc_eval(m, -1e3) == 0
    assert gpc_eval(model(P()), 0.2) == 0


def test_gpc_is_box_integral_of_surface():
    D = P(((0, 1), (0.5, 2.5)))
    m = model(D, "life", 0.8)
    for t in (0.2, 0.9, 1.7):
        val, _ = integrate.dblquad(lambda y, x: surface_eval(m, x, y), -10, t, t, 12, epsabs=1e-9)
        assert val == pytest.approx(gpc_eval(m, t), abs=1e-4)


def test_sample_examples():
    s = gpc_sample(model(SINGLE), 0, 1, 2)
    assert list(s.t_values) == [0, 1]
    assert np.all(gpc_sample(model(P()), -1, 1, 5).values == 0)
    s = gpc_sample(model(SINGLE), 0, 1, 3)
    assert np.allclose(s.values, [0.42067237303427147, 0.47812033535111607, 0.42067237303427147], atol=1e-12)
    assert s.values[0] == s.values[2]


def test_sample_validation():
    with pytest.raises(ValueError):
        gpc_sample(model(SINGLE), 1, 0, 3)
    with pytest.raises(ValueError):
        gpc_sample(model(SINGLE), 0, 1, 1)
    with pytest.raises(ValueError):
        CurveSamples(np.array([0.0, 0.0]), np.array([1.0, 1.0]), 1.0, "none")


def test_samples_csv():
    text = gpc_sample(model(SINGLE), 0, 1, 3).to_csv()
    lines = text.splitlines()
    assert lines[0].startswith("# sigma=1 weight=none diagram=")
    assert lines[1] == "t,value"
    assert lines[3] == "0.5,0.4781203354"


def test_l1_closed_examples():
    assert l1_norm_closed(model(SINGLE)) == pytest.approx(SINGLE_NORM, abs=1e-14)
    assert l1_norm_closed(model(P())) == 0
    assert l1_norm_closed(model(P(((0, 1), (0, 1))))) == pytest.approx(2 * SINGLE_NORM, abs=1e-14)


def test_l1_quadrature_examples():
    assert l1_norm_quadrature(model(SINGLE)) == pytest.approx(SINGLE_NORM, abs=1e-8)
    assert l1_norm_quadrature(model(P())) == 0


def test_l1_closed_matches_quadrature_random(rng):
    kinds = ["none", "life", "entropy", "lifespan", "midlife"]
    for i in range(60):
        D = random_diagram(rng, n_max=12)
        sigma = float(rng.uniform(0.1, 5))
        m = model(D, kinds[i % len(kinds)], sigma)
        assert l1_norm_closed(m) == pytest.approx(l1_norm_quadrature(m), rel=1e-6, abs=1e-12)


def test_mixed_sign_weights_use_quadrature():
    spec = WeightSpec.custom(lambda b, d: (d - b) * (1 if b < 1 else -1))
    m = GpcModel.build(P(((0, 1), (2, 5))), spec, 1.0)
    assert not closed_form_is_exact(m)
    q = l1_norm_quadrature(m)
    assert q < l1_norm_closed(m)
    assert l1_norm(m) == q


@given(diagrams(max_size=6), st.floats(0.1, 5))
def test_unweighted_norm_bound_chain(D, sigma):
    val = l1_norm_closed(model(D, sigma=sigma))
    mid = math.fsum((p.death - p.birth) + sigma / math.sqrt(math.pi) for p in D)
    d = min_lifespan(D)
    inv = 0.0 if math.isinf(d) else 1 / d
    top = (1 + sigma * inv / math.sqrt(math.pi)) * total_lifespan(D)
    assert val <= mid * (1 + 1e-12) + 1e-12
    assert mid <= top * (1 + 1e-12) + 1e-12


@given(diagrams(max_size=6), st.floats(-100, 100), st.floats(0.1, 4))
def test_nonneg_weights_bounds(D, t, sigma):
    m = model(D, "lifespan", sigma)
    g = gpc_eval(m, t)
    assert -1e-15 <= g <= m.weights.values.sum() + 1e-9


@given(diagrams(max_size=6), st.floats(-20, 20))
def test_translation_equivariance(D, c):
    m, mc = model(D), model(D.shifted(c))
    ts = np.linspace(-30, 30, 41)
    assert np.allclose(gpc_eval(mc, ts + c), gpc_eval(m, ts), atol=1e-12, rtol=0)
    assert l1_norm_closed(mc) == pytest.approx(l1_norm_closed(m), rel=1e-9)


@given(diagrams(max_size=5), diagrams(max_size=5))
def test_additivity_unweighted(C, D):
    ts = np.linspace(-60, 90, 31)
    assert np.allclose(gpc_eval(model(C + D), ts), gpc_eval(model(C), ts) + gpc_eval(model(D), ts), atol=1e-13)


@pytest.mark.parametrize("b,d,sigma", [(0, 1, 1), (2, 4, 0.8), (-3, -2.5, 3)])
def test_single_point_peak_at_midlife(b, d, sigma):
    m = model(P(((b, d),)), sigma=sigma)
    res = optimize.minimize_scalar(lambda t: -gpc_eval(m, t), bracket=(b, d), method="golden",
                                   options={"xtol": 1e-10})
    assert res.x == pytest.approx((b + d) / 2, abs=1e-6)


def test_l1_distance_examples():
    m = model(P(((0, 1), (2, 3))))
    assert l1_distance(m, m) == pytest.approx(0, abs=1e-12)
    assert l1_distance(m, model(P())) == pytest.approx(l1_norm_quadrature(m), rel=1e-9)
    d = l1_distance(model(SINGLE), model(P(((0, 1.1),))))
    assert 0 < d <= 0.1


def test_l1_distance_closed_case():
    # nested single points: G_D >= G_C pointwise, so the distance is a difference of norms
    C, D = model(SINGLE), model(P(((0, 1.1),)))
    assert l1_distance(C, D) == pytest.approx(l1_norm_closed(D) - l1_norm_closed(C), rel=1e-8)


def test_l1_distance_sigma_mismatch():
    with pytest.raises(SigmaMismatch):
        l1_distance(model(SINGLE, sigma=1), model(SINGLE, sigma=2))


def test_model_validation():
    with pytest.raises(ValueError):
        GpcModel.build(SINGLE, sigma=0)
