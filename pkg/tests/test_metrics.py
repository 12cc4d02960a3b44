import math

import numpy as np
import pytest
from hypothesis import given

from gpcurves.diagrams import PersistenceDiagram, total_lifespan
from gpcurves.errors import InvalidMatching, TooLarge
from gpcurves.metrics import (
    Matching,
    matching_cost,
    partition,
    wasserstein1,
    wasserstein1_bruteforce,
)

from conftest import diagrams, random_diagram

P = PersistenceDiagram


def test_self_distance_identity_matching():
    C = P(((0, 1), (2, 5), (2, 5)))
    w, m = wasserstein1(C, C)
    assert w == 0
    assert sorted(m.pairs) == [(0, 0), (1, 1), (2, 2)] or all(C[i] == C[j] for i, j in m.pairs)
    assert not m.c_to_diagonal and not m.d_to_diagonal


def test_point_to_empty():
    w, m = wasserstein1(P(((0, 1),)), P())
    assert w == 0.5
    assert m.c_to_diagonal == (0,) and not m.pairs


def test_pair_beats_diagonal():
    C, D = P(((0, 1),)), P(((0.1, 1.2),))
    w, m = wasserstein1(C, D)
    assert w == pytest.approx(0.2, abs=1e-15)
    assert m.pairs == ((0, 0),)
    assert wasserstein1_bruteforce(C, D) == pytest.approx(0.2, abs=1e-15)


def test_bruteforce_examples():
    assert wasserstein1_bruteforce(P(), P()) == 0
    C, D = P(((0, 2),)), P(((0, 2), (5, 5.1)))
    assert wasserstein1_bruteforce(C, D) == pytest.approx(0.05, abs=1e-12)
    assert wasserstein1(C, D)[0] == pytest.approx(0.05, abs=1e-12)


def test_bruteforce_cap():
    C = P(tuple((i, i + 1) for i in range(5)))
    with pytest.raises(TooLarge):
        wasserstein1_bruteforce(C, C)


def test_solver_matches_bruteforce(rng):
    for _ in range(300):
        C = random_diagram(rng, n_max=4, hi=5)
        D = random_diagram(rng, n_max=4, hi=5)
        assert wasserstein1(C, D)[0] == pytest.approx(wasserstein1_bruteforce(C, D), abs=1e-9)


@given(diagrams(max_size=6), diagrams(max_size=6))
def test_matching_structure_and_cost(C, D):
    w, m = wasserstein1(C, D)
    assert sorted([i for i, _ in m.pairs] + list(m.c_to_diagonal)) == list(range(len(C)))
    assert sorted([j for _, j in m.pairs] + list(m.d_to_diagonal)) == list(range(len(D)))
    assert matching_cost(C, D, m) == pytest.approx(m.cost, abs=1e-12)
    assert w == m.cost


@given(diagrams(max_size=6), diagrams(max_size=6))
def test_symmetry_and_lifespan_bound(C, D):
    a, b = wasserstein1(C, D)[0], wasserstein1(D, C)[0]
    assert a == pytest.approx(b, abs=1e-12 * max(1, a))
    assert abs(total_lifespan(C) - total_lifespan(D)) <= 2 * a + 1e-9


def test_triangle_inequality(rng):
    for _ in range(100):
        A, B, C = (random_diagram(rng, n_max=10) for _ in range(3))
        assert wasserstein1(A, B)[0] <= wasserstein1(A, C)[0] + wasserstein1(C, B)[0] + 1e-9


def test_zero_iff_equal(rng):
    for _ in range(50):
        C = random_diagram(rng, n_max=6, n_min=1)
        D = random_diagram(rng, n_max=6)
        assert (wasserstein1(C, D)[0] == 0) == (C == D)


def test_partition_examples():
    C = P(((0, 1), (2, 4)))
    part = partition(C, C, wasserstein1(C, C)[1])
    assert part.c_prime == C and part.d_prime == C and len(part.e) == 0

    single = P(((0, 1),))
    part = partition(single, P(), wasserstein1(single, P())[1])
    assert part.e == single and len(part.c_prime) == 0

    D = P(((0.1, 1.2),))
    part = partition(single, D, wasserstein1(single, D)[1])
    assert part.c_prime == single and part.d_prime == D and len(part.e) == 0
    assert part.aligned == ((single[0], D[0]),)


@given(diagrams(max_size=6), diagrams(max_size=6))
def test_partition_invariants(C, D):
    part = partition(C, D, wasserstein1(C, D)[1])
    assert len(part.c_prime) == len(part.d_prime)
    leftover_c = [C[i] for i in part.e_from_c]
    leftover_d = [D[j] for j in part.e_from_d]
    assert part.e == P(tuple(leftover_c + leftover_d))
    assert part.c_prime + P(tuple(leftover_c)) == C


def test_partition_rejects_invalid():
    C = P(((0, 1), (2, 3)))
    with pytest.raises(InvalidMatching):
        partition(C, C, Matching(((0, 0),), (), (), 0.0))
    with pytest.raises(InvalidMatching):
        partition(C, C, Matching(((0, 0), (0, 1)), (1,), (), 0.0))
