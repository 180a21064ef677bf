"""Exact energy-landscape analysis by exhaustive enumeration.

All 2^n spin configurations are sorted by (energy, index) and inserted one by
one into a union-find structure, uniting each new configuration with its
already-inserted single-flip neighbors.  Two configurations share a component
after level t exactly when some single-flip path connects them without ever
exceeding energy t, so

* the communication height Phi(A, B) is the insertion level at which a member
  of A first shares a component with a member of B,
* the stability level V_xi is the first level at which xi's component gains a
  strictly lower-energy configuration, minus H(xi),
* the barrier Gamma* is Phi(all-down, all-up) - H(all-down).

The gate construction takes the down-valley S = {xi : Phi(xi, down) <
Phi(xi, up)}, the sublevel set at the barrier with S removed, and the
component R of all-up inside it; the critical set C* is the exact-level slice
of R restricted to configurations with at least one S-neighbor (mutual
adjacency with the valley is one of the defining conditions), and the
protocritical set P* is the set of S-neighbors of C*.  Configurations at the
barrier level can never lie in S (an ultrametric inequality), so whether a
path is required to avoid S from its first or its second configuration does
not change the construction; maximality is checked against candidate
extensions under the whole-path reading, which is the one that makes the
maximal pair unique.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .energy import ENERGY_TOL, ModelParams, SpinConfig, all_energies, hamiltonian
from .errors import CapacityError, ConfigError, StructuralError
from .graphs import MultiGraph

BARRIER_CAP = 24   # configurations: one 64-bit word each
GATE_CAP = 20


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _first_connection(order, energies, nbits, a, b):
    """Level at which configs a and b first share a component."""
    size = order.size
    parent = np.full(size, -1, dtype=np.int64)
    for idx in range(size):
        s = order[idx]
        parent[s] = s
        for bit in range(nbits):
            z = s ^ (1 << bit)
            if parent[z] < 0:
                continue
            ra = s
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = z
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra != rb:
                parent[rb] = ra
        if parent[a] >= 0 and parent[b] >= 0:
            ra = a
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = b
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra == rb:
                return energies[s]
    return np.inf


@njit(cache=True)
def _phi_to_marker(order, energies, nbits, marker):
    """Phi(xi, M) for every xi: first level at which xi's component meets M."""
    size = order.size
    parent = np.full(size, -1, dtype=np.int64)
    has_m = np.zeros(size, dtype=np.bool_)
    head = np.full(size, -1, dtype=np.int64)
    tail = np.full(size, -1, dtype=np.int64)
    nxt = np.full(size, -1, dtype=np.int64)
    phi = np.full(size, np.inf)
    for idx in range(size):
        s = order[idx]
        e = energies[s]
        parent[s] = s
        if marker[s]:
            has_m[s] = True
            phi[s] = e
        else:
            head[s] = s
            tail[s] = s
        for bit in range(nbits):
            z = s ^ (1 << bit)
            if parent[z] < 0:
                continue
            ra = s
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = z
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra == rb:
                continue
            if has_m[ra] and has_m[rb]:
                parent[rb] = ra
            elif has_m[ra]:
                c = head[rb]
                while c >= 0:
                    phi[c] = e
                    c = nxt[c]
                head[rb] = -1
                parent[rb] = ra
            elif has_m[rb]:
                c = head[ra]
                while c >= 0:
                    phi[c] = e
                    c = nxt[c]
                head[ra] = -1
                parent[ra] = rb
            else:
                parent[rb] = ra
                if head[ra] < 0:
                    head[ra] = head[rb]
                    tail[ra] = tail[rb]
                elif head[rb] >= 0:
                    nxt[tail[ra]] = head[rb]
                    tail[ra] = tail[rb]
    return phi


@njit(cache=True)
def _stability_kernel(order, energies, nbits, tol):
    """V_xi for every xi; +inf where the component never meets lower energy."""
    size = order.size
    parent = np.full(size, -1, dtype=np.int64)
    min_e = np.zeros(size)
    head = np.full(size, -1, dtype=np.int64)
    tail = np.full(size, -1, dtype=np.int64)
    nxt = np.full(size, -1, dtype=np.int64)
    vout = np.full(size, np.inf)
    for idx in range(size):
        s = order[idx]
        e = energies[s]
        parent[s] = s
        min_e[s] = e
        head[s] = s
        tail[s] = s
        for bit in range(nbits):
            z = s ^ (1 << bit)
            if parent[z] < 0:
                continue
            ra = s
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = z
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra == rb:
                continue
            ea = min_e[ra]
            eb = min_e[rb]
            if ea < eb - tol:
                c = head[rb]
                while c >= 0:
                    vout[c] = e - energies[c]
                    c = nxt[c]
                head[rb] = -1
                parent[rb] = ra
            elif eb < ea - tol:
                c = head[ra]
                while c >= 0:
                    vout[c] = e - energies[c]
                    c = nxt[c]
                head[ra] = -1
                parent[ra] = rb
            else:
                parent[rb] = ra
                if ea > eb:
                    min_e[ra] = eb
                if head[ra] < 0:
                    head[ra] = head[rb]
                    tail[ra] = tail[rb]
                elif head[rb] >= 0:
                    nxt[tail[ra]] = head[rb]
                    tail[ra] = tail[rb]
    return vout


@njit(cache=True)
def _component_of(nbits, allowed, source):
    """Breadth-first component of `source` in the flip graph restricted to `allowed`."""
    size = allowed.size
    seen = np.zeros(size, dtype=np.bool_)
    if not allowed[source]:
        return seen
    queue = np.empty(size, dtype=np.int64)
    queue[0] = source
    seen[source] = True
    lo, hi = 0, 1
    while lo < hi:
        s = queue[lo]
        lo += 1
        for bit in range(nbits):
            z = s ^ (1 << bit)
            if allowed[z] and not seen[z]:
                seen[z] = True
                queue[hi] = z
                hi += 1
    return seen


# ---------------------------------------------------------------------------
# preparation and capacity checks
# ---------------------------------------------------------------------------

def _check_capacity(n: int, cap: int, what: str, allow_above_cap: bool) -> None:
    if n <= cap:
        return
    if allow_above_cap:
        warnings.warn(f"{what} on n={n} exceeds the cap of {cap}; this may be slow")
        if n > 26:
            raise CapacityError(f"{what}: n={n} is beyond any supported size")
        return
    raise CapacityError(f"{what} supports n <= {cap} (got n={n}); pass allow_above_cap=True to force")


def _prepare(g: MultiGraph, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    energies = all_energies(g, params)
    masks = np.arange(energies.size, dtype=np.int64)
    order = np.lexsort((masks, energies)).astype(np.int64)
    return energies, order


def _mask_of(g: MultiGraph, sigma) -> int:
    if isinstance(sigma, SpinConfig):
        if sigma.n != g.n:
            raise ConfigError("configuration size does not match graph")
        return sigma.bits
    return int(sigma)


# ---------------------------------------------------------------------------
# communication heights and barriers
# ---------------------------------------------------------------------------

def communication_height(g: MultiGraph, params: ModelParams, confs_a, confs_b,
                         *, allow_above_cap: bool = False) -> float:
    """Min over single-flip paths from A to B of the max energy along the path."""
    _check_capacity(g.n, BARRIER_CAP, "communication_height", allow_above_cap)
    a = [_mask_of(g, s) for s in confs_a]
    b = [_mask_of(g, s) for s in confs_b]
    if not a or not b:
        raise ConfigError("communication height needs nonempty sets")
    if set(a) & set(b):
        raise ConfigError("communication height needs disjoint sets")
    energies, order = _prepare(g, params)
    marker = np.zeros(energies.size, dtype=np.bool_)
    for m in a:
        marker[m] = True
    phi = _phi_to_marker(order, energies, g.n, marker)
    return float(min(phi[m] for m in b))


def energy_barrier(g: MultiGraph, params: ModelParams, *, allow_above_cap: bool = False) -> float:
    """Gamma* = Phi(all-down, all-up) - H(all-down)."""
    _check_capacity(g.n, BARRIER_CAP, "energy_barrier", allow_above_cap)
    energies, order = _prepare(g, params)
    level = _first_connection(order, energies, g.n, 0, energies.size - 1)
    return float(level - energies[0])


def stability_levels(g: MultiGraph, params: ModelParams, *, allow_above_cap: bool = False) -> np.ndarray:
    """V_xi for every configuration (indexed by bitmask), +inf on the ground state."""
    _check_capacity(g.n, BARRIER_CAP, "stability_levels", allow_above_cap)
    energies, order = _prepare(g, params)
    return _stability_kernel(order, energies, g.n, ENERGY_TOL)


def classify_states(g: MultiGraph, params: ModelParams, *, allow_above_cap: bool = False):
    """(Omega_stab, Omega_meta, h_holds) with ties included on both sets."""
    params.require_positive_field("classify_states")
    _check_capacity(g.n, BARRIER_CAP, "classify_states", allow_above_cap)
    energies, order = _prepare(g, params)
    v = _stability_kernel(order, energies, g.n, ENERGY_TOL)
    emin = energies.min()
    stab = np.flatnonzero(energies <= emin + ENERGY_TOL)
    nonstab = np.flatnonzero(energies > emin + ENERGY_TOL)
    vmax = v[nonstab].max()
    meta = nonstab[v[nonstab] >= vmax - ENERGY_TOL]
    h_holds = (meta.size == 1 and meta[0] == 0)
    return stab.tolist(), meta.tolist(), bool(h_holds)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class LandscapeReport:
    n: int
    params: ModelParams
    gamma_star: float
    h_down: float
    omega_stab: list[int]
    omega_meta: list[int]
    h_holds: bool
    energies: np.ndarray = field(repr=False)
    v_table: np.ndarray = field(repr=False)
    phi_to_down: np.ndarray = field(repr=False)
    phi_to_up: np.ndarray = field(repr=False)

    def phi(self, a: int, b: int) -> float:
        """Phi between single configurations, served from the stored tables
        when one endpoint is all-down/all-up."""
        full = (1 << self.n) - 1
        if b in (0, full):
            a, b = b, a
        if a == 0:
            return float(self.phi_to_down[b]) if b != 0 else float(self.energies[0])
        if a == full:
            return float(self.phi_to_up[b]) if b != full else float(self.energies[full])
        raise ConfigError("stored tables cover pairs involving all-down or all-up")

    def to_text(self) -> str:
        hexw = max(1, (self.n + 3) // 4)
        lines = [
            f"n: {self.n}",
            f"J: {self.params.J}",
            f"h: {self.params.h}",
            f"gamma_star: {self.gamma_star:.12g}",
            f"h_down: {self.h_down:.12g}",
            f"h_holds: {str(self.h_holds).lower()}",
            "omega_stab: " + " ".join(format(m, f"0{hexw}x") for m in self.omega_stab),
            "omega_meta: " + " ".join(format(m, f"0{hexw}x") for m in self.omega_meta),
        ]
        return "\n".join(lines) + "\n"

    def v_table_csv(self) -> str:
        hexw = max(1, (self.n + 3) // 4)
        rows = ["config_hex,energy,V"]
        for m in range(self.energies.size):
            v = self.v_table[m]
            vtxt = "inf" if np.isinf(v) else f"{v:.12g}"
            rows.append(f"{format(m, f'0{hexw}x')},{self.energies[m]:.12g},{vtxt}")
        return "\n".join(rows) + "\n"


def analyze_landscape(g: MultiGraph, params: ModelParams, *, allow_above_cap: bool = False) -> LandscapeReport:
    """Full exact report: barrier, V table, stable/metastable sets, both Phi tables."""
    params.require_positive_field("analyze_landscape")
    _check_capacity(g.n, BARRIER_CAP, "analyze_landscape", allow_above_cap)
    energies, order = _prepare(g, params)
    size = energies.size
    marker = np.zeros(size, dtype=np.bool_)
    marker[0] = True
    phi_down = _phi_to_marker(order, energies, g.n, marker)
    marker[:] = False
    marker[size - 1] = True
    phi_up = _phi_to_marker(order, energies, g.n, marker)
    v = _stability_kernel(order, energies, g.n, ENERGY_TOL)
    gamma = float(phi_down[size - 1] - energies[0])
    emin = energies.min()
    stab = np.flatnonzero(energies <= emin + ENERGY_TOL)
    nonstab = np.flatnonzero(energies > emin + ENERGY_TOL)
    vmax = v[nonstab].max()
    meta = nonstab[v[nonstab] >= vmax - ENERGY_TOL]
    h_holds = (meta.size == 1 and meta[0] == 0)
    return LandscapeReport(
        n=g.n, params=params, gamma_star=gamma, h_down=float(energies[0]),
        omega_stab=stab.tolist(), omega_meta=meta.tolist(), h_holds=bool(h_holds),
        energies=energies, v_table=v, phi_to_down=phi_down, phi_to_up=phi_up,
    )


# ---------------------------------------------------------------------------
# gates
# ---------------------------------------------------------------------------

@dataclass
class GateReport:
    n: int
    gamma_star: float
    gate_level: float
    p_star: list[int]
    c_star: list[int]
    flags: list[str]

    def to_text(self) -> str:
        hexw = max(1, (self.n + 3) // 4)
        lines = [
            f"n: {self.n}",
            f"gamma_star: {self.gamma_star:.12g}",
            f"gate_level: {self.gate_level:.12g}",
            f"c_star_size: {len(self.c_star)}",
            f"p_star_size: {len(self.p_star)}",
            "c_star: " + " ".join(format(m, f"0{hexw}x") for m in self.c_star),
            "p_star: " + " ".join(format(m, f"0{hexw}x") for m in self.p_star),
            "flags: " + ("; ".join(self.flags) if self.flags else "none"),
        ]
        return "\n".join(lines) + "\n"


def _gate_pieces(g: MultiGraph, params: ModelParams):
    energies, order = _prepare(g, params)
    size = energies.size
    marker = np.zeros(size, dtype=np.bool_)
    marker[0] = True
    phi_down = _phi_to_marker(order, energies, g.n, marker)
    marker[:] = False
    marker[size - 1] = True
    phi_up = _phi_to_marker(order, energies, g.n, marker)
    level = float(phi_down[size - 1])
    in_s = phi_down < phi_up - ENERGY_TOL
    allowed = (energies <= level + ENERGY_TOL) & ~in_s
    reach = _component_of(g.n, allowed, size - 1)
    return energies, phi_down, phi_up, level, in_s, reach


def gate_sets(g: MultiGraph, params: ModelParams, *, allow_above_cap: bool = False) -> GateReport:
    """Protocritical/critical pair (P*, C*) of the down-to-up crossover."""
    params.require_positive_field("gate_sets")
    _check_capacity(g.n, GATE_CAP, "gate_sets", allow_above_cap)
    energies, phi_down, phi_up, level, in_s, reach = _gate_pieces(g, params)
    gamma = level - float(energies[0])

    at_level = np.abs(energies - level) <= ENERGY_TOL
    if not at_level.any():
        raise StructuralError("no configuration sits at the barrier level")
    idx = np.arange(energies.size)
    s_nbr = np.zeros(energies.size, dtype=bool)
    for bit in range(g.n):
        s_nbr |= in_s[idx ^ (1 << bit)]
    if not in_s.any():
        raise StructuralError(
            "down-valley is empty (barrier 0, landscape downhill from all-down); gate undefined")
    # mutual adjacency with the valley is part of the defining conditions, so
    # level configurations without a valley neighbor cannot join the gate
    c_star = np.flatnonzero(at_level & reach & s_nbr)
    if c_star.size == 0:
        raise StructuralError("barrier level reached but no gate configuration connects upward")

    c_mark = np.zeros(energies.size, dtype=bool)
    c_mark[c_star] = True
    nbr_of_c = np.zeros(energies.size, dtype=bool)
    for bit in range(g.n):
        nbr_of_c |= c_mark[idx ^ (1 << bit)]
    p_star = np.flatnonzero(in_s & nbr_of_c)

    flags: list[str] = []
    if np.any(energies[p_star] >= level - ENERGY_TOL):
        flags.append("protocritical config at or above the gate level")
    extra = _adjoinable_candidates(g.n, energies, s_nbr, reach, c_mark)
    if extra:
        flags.append(f"{len(extra)} configurations outside C* admit gate paths (maximality violated)")
    return GateReport(n=g.n, gamma_star=gamma, gate_level=level,
                      p_star=p_star.tolist(), c_star=c_star.tolist(), flags=flags)


def _adjoinable_candidates(nbits, energies, s_nbr, reach, c_mark) -> list[int]:
    """Configurations that could extend (P*, C*) without breaking the defining
    conditions: in the sublevel set, path to all-up avoiding the down-valley,
    a valley neighbor available, yet not already in C*."""
    cand = reach & s_nbr & ~c_mark
    return np.flatnonzero(cand).tolist()


def check_gate_pair(g: MultiGraph, params: ModelParams, p_set, c_set) -> list[str]:
    """Violations of the gate-pair conditions for an arbitrary (P, C)."""
    energies, phi_down, phi_up, level, in_s, reach = _gate_pieces(g, params)
    p = [_mask_of(g, x) for x in p_set]
    c = [_mask_of(g, x) for x in c_set]
    out = []
    cset = set(c)
    pset = set(p)
    for x in p:
        if not any((x ^ (1 << b)) in cset for b in range(g.n)):
            out.append(f"P member {x:#x} has no C neighbor")
        if not in_s[x]:
            out.append(f"P member {x:#x} is not in the down-valley")
    for x in c:
        if not any((x ^ (1 << b)) in pset for b in range(g.n)):
            out.append(f"C member {x:#x} has no P neighbor")
        if not reach[x]:
            out.append(f"C member {x:#x} has no admissible path to all-up")
    return out


# ---------------------------------------------------------------------------
# explicit paths
# ---------------------------------------------------------------------------

@dataclass
class RemovalPath:
    """Greedy vertex-removal path and its maximal elevation above the start."""

    steps: list[frozenset[int]]
    elevations: list[float]
    max_elevation: float
    reached_lower: bool


def greedy_removal_path(g: MultiGraph, params: ModelParams, start) -> RemovalPath:
    """Remove, one at a time, a +1 vertex minimizing (edges kept inside) -
    (edges to the outside); stop at the first configuration below the start
    energy from which every removal raises energy, or at all-down.
    """
    if isinstance(start, SpinConfig):
        current = set(start.plus_set())
    elif isinstance(start, (int, np.integer)):
        current = {v for v in range(g.n) if (int(start) >> v) & 1}
    else:
        current = set(int(v) for v in start)
    steps = [frozenset(current)]
    elevations = [0.0]
    elev = 0.0
    ratio = params.h / params.J

    def scores():
        out = {}
        for v in current:
            inside = sum(1 for w in g.neighbors(v) if int(w) in current)
            outside = int(g.degrees[v] - 2 * g.loops[v]) - inside
            out[v] = inside - outside
        return out

    while current:
        sc = scores()
        if elev < 0 and all(s + ratio > 0 for s in sc.values()):
            break
        v = min(current, key=lambda u: (sc[u], u))
        current.discard(v)
        elev += params.J * sc[v] + params.h
        steps.append(frozenset(current))
        elevations.append(elev)
    return RemovalPath(
        steps=steps,
        elevations=elevations,
        max_elevation=max(elevations),
        reached_lower=bool(elevations[-1] < 0 or len(steps) == 1),
    )


@dataclass
class FlipPathProfile:
    """Elevation profile of the ascending-degree flip path from all-down to all-up."""

    profile: np.ndarray       # elevation above H(all-down) at m = 0..n
    height: float             # max over m; certified upper bound on Gamma*
    argmax_m: int

    def path_masks(self):
        """The configurations along the path (n <= 63)."""
        mask = 0
        out = [0]
        for v in range(self.profile.size - 1):
            mask |= 1 << v
            out.append(mask)
        return out


def sorted_flip_path(g: MultiGraph, params: ModelParams) -> FlipPathProfile:
    """Flip vertices 1..n in index order; vertex order must be ascending by degree."""
    deg = g.degrees
    if np.any(deg[1:] < deg[:-1]):
        raise ConfigError("sorted_flip_path needs vertices labeled in ascending degree order")
    n = g.n
    profile = np.zeros(n + 1)
    boundary = 0
    flipped = np.zeros(n, dtype=bool)
    for m in range(1, n + 1):
        v = m - 1
        inside = int(np.sum(flipped[g.neighbors(v)]))
        nonloop = int(deg[v] - 2 * g.loops[v])
        boundary += nonloop - 2 * inside
        flipped[v] = True
        profile[m] = params.J * boundary - params.h * m
    argmax = int(np.argmax(profile))
    return FlipPathProfile(profile=profile, height=float(profile[argmax]), argmax_m=argmax)
