import numpy as np
import pytest
from hypothesis import settings, strategies as st

from gpcurves.diagrams import PersistenceDiagram

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")


def random_diagram(rng, n_max=20, lo=0.0, hi=10.0, n_min=0):
    n = int(rng.integers(n_min, n_max + 1))
    a = rng.uniform(lo, hi, (n, 2))
    a.sort(axis=1)
    a = a[a[:, 1] > a[:, 0]]
    return PersistenceDiagram.from_array(a)


@pytest.fixture
def rng():
    return np.random.default_rng(20201018)


coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
length = st.floats(1e-3, 20, allow_nan=False, allow_infinity=False)


@st.composite
def diagrams(draw, max_size=8):
    pts = draw(st.lists(st.tuples(coord, length), max_size=max_size))
    return PersistenceDiagram(tuple((b, b + l) for b, l in pts))
