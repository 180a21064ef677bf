import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_energy, random_multigraph
from glaubermeta.energy import (ModelParams, SpinConfig, all_energies, boundary_edge_count,
                                flip_delta, hamiltonian, plus_degree_sum)
from glaubermeta.errors import ConfigError
from glaubermeta.graphs import MultiGraph, build_complete, build_er


def test_model_params_validation():
    with pytest.raises(ConfigError):
        ModelParams(-1.0, 0.5)
    with pytest.raises(ConfigError):
        ModelParams(1.0, -0.5)
    with pytest.raises(ConfigError):
        ModelParams(1.0, 0.5, -1.0)
    p0 = ModelParams(1.0, 0.0)  # test-only override
    with pytest.raises(ConfigError):
        p0.require_positive_field("landscape classification")


def test_k3_energies():
    k3 = build_complete(3)
    p = ModelParams(1.0, 0.5)
    assert hamiltonian(k3, 0, p) == pytest.approx(-0.75)      # all equal: -(J/2)|E| + (h/2) n
    assert hamiltonian(k3, 0b001, p) == pytest.approx(0.75)
    assert hamiltonian(k3, 0b111, p) == pytest.approx(-2.25)


def test_self_loop_constant():
    g = MultiGraph(1, [(0, 0)])
    p = ModelParams(1.0, 2.0)
    assert hamiltonian(g, 0, p) == pytest.approx(0.5)          # -J/2 + h/2
    assert hamiltonian(g, 1, p) == pytest.approx(-1.5)
    assert flip_delta(g, 0, 0, p) == pytest.approx(-2.0)       # loop drops out: just -h


def test_flip_delta_from_all_down():
    k3 = build_complete(3)
    p = ModelParams(1.0, 0.5)
    assert flip_delta(k3, 0, 0, p) == pytest.approx(1.5)       # J deg - h


def test_flip_involution(rng):
    g = random_multigraph(rng, 5)
    p = ModelParams(0.7, 0.3)
    for mask in (0, 7, 21):
        for v in range(5):
            d1 = flip_delta(g, mask, v, p)
            d2 = flip_delta(g, mask ^ (1 << v), v, p)
            assert d1 + d2 == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=2, max_value=7))
def test_flip_delta_matches_hamiltonian_difference(seed, n):
    r = np.random.default_rng(seed)
    g = random_multigraph(r, n)
    p = ModelParams(1.25, 0.4)
    mask = int(r.integers(0, 1 << n))
    v = int(r.integers(n))
    direct = hamiltonian(g, mask ^ (1 << v), p) - hamiltonian(g, mask, p)
    assert flip_delta(g, mask, v, p) == pytest.approx(direct, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=2, max_value=7))
def test_energy_boundary_identity(seed, n):
    # H(sigma) - H(all-down) = J |E(sigma, complement)| - h |sigma|
    r = np.random.default_rng(seed)
    g = random_multigraph(r, n)
    p = ModelParams(1.0, 0.25)
    mask = int(r.integers(0, 1 << n))
    lhs = hamiltonian(g, mask, p) - hamiltonian(g, 0, p)
    rhs = p.J * boundary_edge_count(g, mask) - p.h * bin(mask).count("1")
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_hamiltonian_against_independent_sum(rng):
    for _ in range(50):
        n = int(rng.integers(2, 8))
        g = random_multigraph(rng, n)
        mask = int(rng.integers(0, 1 << n))
        p = ModelParams(0.9, 0.7)
        assert hamiltonian(g, mask, p) == pytest.approx(brute_energy(g, mask, 0.9, 0.7), abs=1e-12)


def test_spin_flip_symmetry_at_zero_field(rng):
    p = ModelParams(1.0, 0.0)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        g = random_multigraph(rng, n)
        mask = int(rng.integers(0, 1 << n))
        comp = mask ^ ((1 << n) - 1)
        assert hamiltonian(g, mask, p) == pytest.approx(hamiltonian(g, comp, p), abs=1e-12)


def test_boundary_counts():
    k4 = build_complete(4)
    assert boundary_edge_count(k4, 0) == 0
    assert boundary_edge_count(k4, 0b1111) == 0
    assert boundary_edge_count(k4, 0b0011) == 4
    gloop = MultiGraph(2, [(0, 0), (0, 1), (0, 1)])
    assert boundary_edge_count(gloop, 0b01) == 2  # loops never count, multi-edges do


def test_er_boundary_mean_appendix(rng):
    n, p_edge, size = 40, 0.2, 20
    mu = p_edge * size * (n - size)
    vals = []
    for seed in range(200):
        r = np.random.default_rng(seed)
        g = build_er(n, p_edge, r)
        plus = frozenset(int(v) for v in r.choice(n, size=size, replace=False))
        vals.append(boundary_edge_count(g, SpinConfig(n, plus)))
    se = np.std(vals, ddof=1) / np.sqrt(len(vals))
    assert abs(np.mean(vals) - mu) < 3 * se


def test_plus_degree_sum():
    k4 = build_complete(4)
    assert plus_degree_sum(k4, 0) == 0
    assert plus_degree_sum(k4, 0b1111) == 12
    g = MultiGraph(3, [(0, 0), (0, 1), (1, 2)])
    assert plus_degree_sum(g, 0b001) == 3  # loop counts twice


def test_all_energies_table(rng):
    g = random_multigraph(rng, 6)
    p = ModelParams(1.1, 0.3)
    table = all_energies(g, p)
    for mask in range(64):
        assert table[mask] == pytest.approx(hamiltonian(g, mask, p), abs=1e-12)


# ---------------------------------------------------------------------------
# SpinConfig
# ---------------------------------------------------------------------------

def test_spinconfig_forms():
    s = SpinConfig(5, 0b10110)
    assert s.plus_set() == {1, 2, 4}
    assert s.size() == 3
    assert s.complement().plus_set() == {0, 3}
    assert s.flip(0).bits == 0b10111
    assert s.spin(1) == 1 and s.spin(0) == -1


def test_spinconfig_serialization_roundtrip():
    s = SpinConfig(8, 0xAB)
    assert s.serialize() == "ab"
    assert SpinConfig.deserialize(8, "ab") == s
    big = SpinConfig(70, frozenset({0, 64, 69}))
    assert big.serialize() == "0,64,69"
    assert SpinConfig.deserialize(70, "0,64,69") == big
    assert SpinConfig.deserialize(70, "") == SpinConfig(70, frozenset())


def test_spinconfig_validation():
    with pytest.raises(ConfigError):
        SpinConfig(3, 0b1000)
    with pytest.raises(ConfigError):
        SpinConfig(3, {5})


def test_big_n_energy_paths():
    n = 80
    edges = [(i, i + 1) for i in range(n - 1)]
    g = MultiGraph(n, edges)
    p = ModelParams(1.0, 0.5)
    sigma = SpinConfig(n, frozenset(range(40)))
    assert boundary_edge_count(g, sigma) == 1
    # 78 aligned pairs and 1 boundary edge: pair sum 77; the field cancels
    assert hamiltonian(g, sigma, p) == pytest.approx(-p.J / 2 * 77)
    assert flip_delta(g, sigma, 0, p) == pytest.approx(p.J * 1 + p.h)
