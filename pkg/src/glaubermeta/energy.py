"""Spin configurations and energy bookkeeping on multigraphs.

The energy of a configuration xi in {-1,+1}^V is

    H(xi) = -(J/2) * sum_{(v,w) in E} xi(v) xi(w)  -  (h/2) * sum_v xi(v),

with every parallel edge counted and each self-loop at v contributing a
constant -J/2 (xi(v)^2 = 1).  The constant keeps energies bit-comparable
across implementations; it cancels in every flip difference.

Configurations are identified with their +1 vertex sets.  For n <= 63 the
compact form is an integer bitmask (bit v set means xi(v) = +1), which is
what the exhaustive-enumeration machinery uses throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConfigError
from .graphs import MultiGraph

ENERGY_TOL = 1e-9  # exact-landscape comparisons; ties broken by configuration index


@dataclass(frozen=True)
class ModelParams:
    """Pair potential J > 0, field h > 0, inverse temperature beta >= 0.

    h = 0 is accepted at construction as a test-only override; operations
    whose meaning requires a symmetry-breaking field check it explicitly.
    """

    J: float
    h: float
    beta: float = 0.0

    def __post_init__(self):
        if not self.J > 0:
            raise ConfigError(f"pair potential J must be positive, got {self.J}")
        if self.h < 0:
            raise ConfigError(f"field h must be nonnegative, got {self.h}")
        if self.beta < 0:
            raise ConfigError(f"inverse temperature beta must be >= 0, got {self.beta}")

    def require_positive_field(self, what: str) -> None:
        if self.h == 0:
            raise ConfigError(f"{what} requires h > 0 (h = 0 makes the landscape spin-flip symmetric)")


class SpinConfig:
    """Assignment of +/-1 spins, stored as the set of +1 vertices.

    For n <= 63 the canonical form is the bitmask ``bits``; larger systems
    fall back to a frozenset (serialized as a sorted id list).
    """

    __slots__ = ("n", "bits", "_plus")

    def __init__(self, n: int, plus: Iterable[int] | int):
        self.n = int(n)
        if isinstance(plus, (int, np.integer)):
            if n > 63:
                raise ConfigError("bitmask form only supported for n <= 63")
            bits = int(plus)
            if bits < 0 or bits >> n:
                raise ConfigError(f"bitmask {plus:#x} out of range for n={n}")
            self.bits = bits
            self._plus = None
        else:
            pset = frozenset(int(v) for v in plus)
            if pset and (min(pset) < 0 or max(pset) >= n):
                raise ConfigError("plus set contains out-of-range vertices")
            if n <= 63:
                self.bits = sum(1 << v for v in pset)
                self._plus = None
            else:
                self.bits = -1
                self._plus = pset

    @classmethod
    def all_down(cls, n: int) -> "SpinConfig":
        return cls(n, 0 if n <= 63 else frozenset())

    @classmethod
    def all_up(cls, n: int) -> "SpinConfig":
        return cls(n, (1 << n) - 1 if n <= 63 else frozenset(range(n)))

    def plus_set(self) -> frozenset[int]:
        if self._plus is not None:
            return self._plus
        return frozenset(v for v in range(self.n) if (self.bits >> v) & 1)

    def spin(self, v: int) -> int:
        if self._plus is not None:
            return 1 if v in self._plus else -1
        return 1 if (self.bits >> v) & 1 else -1

    def size(self) -> int:
        if self._plus is not None:
            return len(self._plus)
        return self.bits.bit_count()

    def complement(self) -> "SpinConfig":
        if self._plus is not None:
            return SpinConfig(self.n, frozenset(range(self.n)) - self._plus)
        return SpinConfig(self.n, self.bits ^ ((1 << self.n) - 1))

    def flip(self, v: int) -> "SpinConfig":
        if self._plus is not None:
            s = set(self._plus)
            s.symmetric_difference_update({v})
            return SpinConfig(self.n, frozenset(s))
        return SpinConfig(self.n, self.bits ^ (1 << v))

    def signs(self) -> np.ndarray:
        """+/-1 vector indexed by vertex."""
        out = np.full(self.n, -1, dtype=np.int64)
        for v in self.plus_set():
            out[v] = 1
        return out

    def serialize(self) -> str:
        """Lowercase hex bitmask for n <= 63, else sorted vertex-id list."""
        if self.n <= 63:
            return format(self.bits, "x")
        return ",".join(str(v) for v in sorted(self.plus_set()))

    @classmethod
    def deserialize(cls, n: int, text: str) -> "SpinConfig":
        if n <= 63:
            return cls(n, int(text, 16))
        if not text.strip():
            return cls(n, frozenset())
        return cls(n, frozenset(int(tok) for tok in text.split(",")))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SpinConfig) and self.n == other.n
                and self.plus_set() == other.plus_set())

    def __hash__(self) -> int:
        return hash((self.n, self.bits if self._plus is None else self._plus))

    def __repr__(self) -> str:
        return f"SpinConfig(n={self.n}, +{sorted(self.plus_set())})"


def _as_mask(g: MultiGraph, sigma) -> int:
    """Accept SpinConfig or raw bitmask int."""
    if isinstance(sigma, SpinConfig):
        if sigma.n != g.n:
            raise ConfigError(f"configuration is on {sigma.n} vertices, graph has {g.n}")
        if sigma._plus is not None:
            raise ConfigError("bitmask energy path needs n <= 63")
        return sigma.bits
    return int(sigma)


def _sign_vector(g: MultiGraph, sigma) -> np.ndarray:
    if isinstance(sigma, SpinConfig) and sigma._plus is not None:
        if sigma.n != g.n:
            raise ConfigError(f"configuration is on {sigma.n} vertices, graph has {g.n}")
        return sigma.signs()
    mask = _as_mask(g, sigma)
    if g.n > 63:
        raise ConfigError("graphs beyond 63 vertices need SpinConfig configurations")
    bits = (mask >> np.arange(g.n)) & 1
    return 2 * bits.astype(np.int64) - 1


def hamiltonian(g: MultiGraph, sigma, params: ModelParams) -> float:
    """Energy of sigma, multiplicities counted, each self-loop giving -J/2."""
    s = _sign_vector(g, sigma)
    pair = int(np.sum(s[g.edge_u] * s[g.edge_v]))  # loops give +1 automatically
    return -params.J / 2.0 * pair - params.h / 2.0 * float(s.sum())


def flip_delta(g: MultiGraph, sigma, v: int, params: ModelParams) -> float:
    """H(sigma flip v) - H(sigma) from v's adjacency only; self-loops drop out."""
    if isinstance(sigma, SpinConfig) and sigma._plus is not None:
        plus = sigma.plus_set()
        sv = 1 if v in plus else -1
        local = sum(1 if int(w) in plus else -1 for w in g.neighbors(v))
        return sv * (params.J * local + params.h)
    mask = _as_mask(g, sigma)
    sv = 1 if (mask >> v) & 1 else -1
    local = 0
    for w in g.neighbors(v):
        local += 1 if (mask >> int(w)) & 1 else -1
    return sv * (params.J * local + params.h)


def boundary_edge_count(g: MultiGraph, sigma) -> int:
    """|E(sigma, complement)|: edges with one +1 endpoint and one -1, with multiplicity."""
    s = _sign_vector(g, sigma)
    return int(np.sum(s[g.edge_u] != s[g.edge_v]))


def plus_degree_sum(g: MultiGraph, sigma) -> int:
    """Total degree of the +1 vertices (self-loops counted twice)."""
    s = _sign_vector(g, sigma)
    return int(g.degrees[s > 0].sum())


def all_energies(g: MultiGraph, params: ModelParams) -> np.ndarray:
    """Energies of all 2^n configurations, indexed by bitmask.

    Uses H(mask) = H(all-down) + J * boundary(mask) - h * |mask|.
    """
    n = g.n
    if n > 26:
        raise ConfigError("exhaustive energy table limited to n <= 26")
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int32)
    for b in range(n):
        pop += ((masks >> b) & 1).astype(np.int32)
    bnd = np.zeros(size, dtype=np.int32)
    for u, v in zip(g.edge_u, g.edge_v):
        if u == v:
            continue
        bu = (masks >> int(u)) & 1
        bv = (masks >> int(v)) & 1
        bnd += (bu != bv).astype(np.int32)
    h_down = hamiltonian(g, 0, params)
    return h_down + params.J * bnd.astype(np.float64) - params.h * pop.astype(np.float64)
