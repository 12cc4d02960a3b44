"""1-Wasserstein distance between persistence diagrams (L-infinity ground metric)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .diagrams import DiagramPoint, PersistenceDiagram
from .errors import InvalidMatching, TooLarge

BRUTEFORCE_CAP = 8


@dataclass(frozen=True)
class Matching:
    """Optimal partial bijection; unmatched points go to the diagonal."""

    pairs: Tuple[Tuple[int, int], ...]
    c_to_diagonal: Tuple[int, ...]
    d_to_diagonal: Tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class MatchPartition:
    c_prime: PersistenceDiagram
    d_prime: PersistenceDiagram
    e: PersistenceDiagram
    aligned: Tuple[Tuple[DiagramPoint, DiagramPoint], ...]
    # indices into the original diagrams, kept so weights can be looked up
    pair_indices: Tuple[Tuple[int, int], ...]
    e_from_c: Tuple[int, ...]
    e_from_d: Tuple[int, ...]


def linf(p: DiagramPoint, q: DiagramPoint) -> float:
    return max(abs(p.birth - q.birth), abs(p.death - q.death))


def diagonal_cost(p: DiagramPoint) -> float:
    return (p.death - p.birth) / 2.0


def matching_cost(C: PersistenceDiagram, D: PersistenceDiagram, m: Matching) -> float:
    """Recompute the transport cost from the matching's structure."""
    terms = [linf(C[i], D[j]) for i, j in m.pairs]
    terms += [diagonal_cost(C[i]) for i in m.c_to_diagonal]
    terms += [diagonal_cost(D[j]) for j in m.d_to_diagonal]
    return math.fsum(terms)


def _cost_matrix(C: PersistenceDiagram, D: PersistenceDiagram) -> np.ndarray:
    n, m = len(C), len(D)
    M = np.zeros((n + m, n + m))
    if n and m:
        cb, cd = C.births[:, None], C.deaths[:, None]
        M[:n, :m] = np.maximum(np.abs(cb - D.births[None, :]), np.abs(cd - D.deaths[None, :]))
    # each point may only use its own diagonal slot
    upper = np.full((n, n), np.inf)
    np.fill_diagonal(upper, C.lifespans / 2.0)
    lower = np.full((m, m), np.inf)
    np.fill_diagonal(lower, D.lifespans / 2.0)
    M[:n, m:] = upper
    M[n:, :m] = lower
    return M


def wasserstein1(C: PersistenceDiagram, D: PersistenceDiagram) -> Tuple[float, Matching]:
    """Exact W1 and one optimal matching.

    Reduces to a square assignment problem over the diagonal-augmented point
    sets and solves it with scipy's shortest-augmenting-path solver, which is
    deterministic for a given cost matrix.
    """
    n, m = len(C), len(D)
    if n + m == 0:
        return 0.0, Matching((), (), (), 0.0)
    M = _cost_matrix(C, D)
    rows, cols = linear_sum_assignment(M)
    pairs, c_diag, d_diag = [], [], []
    for i, j in zip(rows, cols):
        if i < n and j < m:
            pairs.append((int(i), int(j)))
        elif i < n:
            c_diag.append(int(i))
        elif j < m:
            d_diag.append(int(j))
    match = Matching(tuple(pairs), tuple(sorted(c_diag)), tuple(sorted(d_diag)), 0.0)
    cost = matching_cost(C, D, match)
    return cost, Matching(match.pairs, match.c_to_diagonal, match.d_to_diagonal, cost)


def wasserstein1_bruteforce(C: PersistenceDiagram, D: PersistenceDiagram) -> float:
    """Exhaustive minimum over all partial injections C -> D (oracle)."""
    n, m = len(C), len(D)
    if n + m > BRUTEFORCE_CAP:
        raise TooLarge(f"|C| + |D| = {n + m} exceeds {BRUTEFORCE_CAP}")
    cdiag = [diagonal_cost(p) for p in C]
    ddiag = [diagonal_cost(q) for q in D]
    best = math.inf

    def rec(i, used, acc):
        nonlocal best
        if i == n:
            total = acc + sum(ddiag[j] for j in range(m) if j not in used)
            best = min(best, total)
            return
        rec(i + 1, used, acc + cdiag[i])
        for j in range(m):
            if j not in used:
                rec(i + 1, used | {j}, acc + linf(C[i], D[j]))

    rec(0, frozenset(), 0.0)
    return best


def partition(C: PersistenceDiagram, D: PersistenceDiagram, m: Matching) -> MatchPartition:
    """Split into matched points C', their images D', and the diagonal-matched E."""
    ci = [i for i, _ in m.pairs] + list(m.c_to_diagonal)
    dj = [j for _, j in m.pairs] + list(m.d_to_diagonal)
    if sorted(ci) != list(range(len(C))) or sorted(dj) != list(range(len(D))):
        raise InvalidMatching("every point must be used exactly once")
    aligned = tuple((C[i], D[j]) for i, j in m.pairs)
    e_pts = [C[i] for i in m.c_to_diagonal] + [D[j] for j in m.d_to_diagonal]
    return MatchPartition(
        c_prime=PersistenceDiagram(tuple(p for p, _ in aligned)),
        d_prime=PersistenceDiagram(tuple(q for _, q in aligned)),
        e=PersistenceDiagram(tuple(e_pts)),
        aligned=aligned,
        pair_indices=tuple(m.pairs),
        e_from_c=tuple(m.c_to_diagonal),
        e_from_d=tuple(m.d_to_diagonal),
    )
