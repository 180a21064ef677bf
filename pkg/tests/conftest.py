"""Shared test oracles, independent of the library's computation paths."""

import itertools

import numpy as np
import pytest

from glaubermeta.graphs import MultiGraph


def all_matchings(points):
    """Every perfect matching of the given point list, as frozensets of pairs."""
    points = list(points)
    if not points:
        return [frozenset()]
    first, rest = points[0], points[1:]
    out = []
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for sub in all_matchings(remaining):
            out.append(sub | {(min(first, other), max(first, other))})
    return out


def brute_energy(g: MultiGraph, mask: int, J: float, h: float) -> float:
    """Direct edge-sum Hamiltonian, written independently of the library."""
    total = 0.0
    for u, v in g.edges:
        su = 1.0 if (mask >> u) & 1 else -1.0
        sv = 1.0 if (mask >> v) & 1 else -1.0
        total += -J / 2.0 * su * sv
    for v in range(g.n):
        total += -h / 2.0 * (1.0 if (mask >> v) & 1 else -1.0)
    return total


def brute_communication_height(g: MultiGraph, J: float, h: float, a: int, b: int) -> float:
    """Min over single-flip paths of the max energy, by fixed-point relaxation
    of bottleneck values over the configuration hypercube."""
    size = 1 << g.n
    energy = [brute_energy(g, m, J, h) for m in range(size)]
    best = [float("inf")] * size
    best[a] = energy[a]
    changed = True
    while changed:
        changed = False
        for s in range(size):
            if best[s] == float("inf"):
                continue
            for v in range(g.n):
                z = s ^ (1 << v)
                cand = max(best[s], energy[z])
                if cand < best[z] - 1e-15:
                    best[z] = cand
                    changed = True
    return best[b]


def random_multigraph(rng: np.random.Generator, n: int, *, allow_loops: bool = True) -> MultiGraph:
    """Small random multigraph with repeated edges and loops for oracle tests."""
    m = int(rng.integers(1, 2 * n + 1))
    edges = []
    for _ in range(m):
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        if not allow_loops and u == v:
            v = (v + 1) % n
        edges.append((u, v))
    return MultiGraph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
