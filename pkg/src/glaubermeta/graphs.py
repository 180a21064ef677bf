"""Random and deterministic multigraphs: degree sequences, stub matchings,
the static and dynamic pairing constructions, coupled growth, Erdos-Renyi
and reference families.

Conventions
-----------
* Stubs (half-edges) are numbered 1..2m, assigned to vertices block-wise in
  ascending vertex order: vertex i owns stubs ``ell_{i-1}+1 .. ell_i``.
* Degree sequences are kept sorted ascending; vertex i then has the i-th
  smallest degree, which is what the flip-path machinery expects.
* Multigraphs store self-loops and multi-edges explicitly.  The degree of a
  vertex counts each self-loop twice.
* All constructors are pure given a seeded ``numpy.random.Generator``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from .errors import ConfigError

MAX_PARITY_REJECTIONS = 1000


# ---------------------------------------------------------------------------
# degree distributions and sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiracDegrees:
    """Constant degree r (the r-regular ensemble)."""

    r: int

    def validate(self, min_degree: int) -> None:
        if self.r < min_degree:
            raise ConfigError(f"dirac degree {self.r} below minimum {min_degree}")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(n, self.r, dtype=np.int64)

    def pmf(self, k: int) -> float:
        return 1.0 if k == self.r else 0.0

    def __str__(self) -> str:
        return f"dirac:{self.r}"


@dataclass(frozen=True)
class PowerLawDegrees:
    """Shifted power law: P[d = delta + k] = (delta+k)^-tau / xi_tau(delta), k >= 0."""

    tau: float
    delta: int

    def validate(self, min_degree: int) -> None:
        if self.tau <= 2.0:
            raise ConfigError(f"power-law exponent tau={self.tau} must exceed 2")
        if self.delta < min_degree:
            raise ConfigError(f"power-law shift {self.delta} below minimum {min_degree}")

    def _norm(self) -> float:
        # Hurwitz zeta(tau, delta) = sum_{i>=delta} i^-tau
        return float(_hurwitz_zeta(self.tau, self.delta))

    def pmf(self, d: int) -> float:
        if d < self.delta:
            return 0.0
        return d ** (-self.tau) / self._norm()

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        z = self._norm()
        u = rng.random(n)
        out = np.empty(n, dtype=np.int64)
        for i, ui in enumerate(u):
            acc = 0.0
            d = self.delta
            target = ui * z
            while True:
                acc += d ** (-self.tau)
                if acc >= target:
                    out[i] = d
                    break
                d += 1
        return out

    def __str__(self) -> str:
        return f"powerlaw:{self.tau:g}:{self.delta}"


DegreeDistribution = DiracDegrees | PowerLawDegrees


def parse_degree_spec(text: str) -> DegreeDistribution:
    """Parse ``dirac:R`` or ``powerlaw:TAU:DELTA``."""
    parts = text.split(":")
    try:
        if parts[0] == "dirac" and len(parts) == 2:
            return DiracDegrees(int(parts[1]))
        if parts[0] == "powerlaw" and len(parts) == 3:
            return PowerLawDegrees(float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"bad degree spec {text!r}: {exc}") from exc
    raise ConfigError(f"bad degree spec {text!r} (want dirac:R or powerlaw:TAU:DELTA)")


class DegreeSequence:
    """Ascending degree sequence with prefix sums ell_m = d_1 + ... + d_m."""

    def __init__(self, degrees: Iterable[int]):
        deg = np.sort(np.asarray(list(degrees), dtype=np.int64))
        if deg.size == 0:
            raise ConfigError("empty degree sequence")
        if deg[0] < 1:
            raise ConfigError("degrees must be >= 1")
        if int(deg.sum()) % 2 != 0:
            raise ConfigError("total degree must be even")
        self.degrees = deg
        self._ell = np.concatenate(([0], np.cumsum(deg)))

    @property
    def n(self) -> int:
        return int(self.degrees.size)

    def ell(self, m: int) -> int:
        """Prefix sum ell_m for 0 <= m <= n."""
        return int(self._ell[m])

    @property
    def ell_prefix(self) -> np.ndarray:
        """Array [ell_0, ell_1, ..., ell_n]."""
        return self._ell

    @property
    def ell_n(self) -> int:
        return int(self._ell[-1])

    @property
    def d_min(self) -> int:
        return int(self.degrees[0])

    @property
    def d_ave(self) -> float:
        return self.ell_n / self.n

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, DegreeSequence) and np.array_equal(self.degrees, other.degrees)

    def __repr__(self) -> str:
        return f"DegreeSequence(n={self.n}, ell_n={self.ell_n}, d_min={self.d_min})"


def sample_degrees(
    dist: DegreeDistribution,
    n: int,
    rng: np.random.Generator,
    *,
    allow_low_degree: bool = False,
) -> DegreeSequence:
    """Draw n i.i.d. degrees, rejecting whole sequences until the total is even.

    The minimum-degree-three rule is enforced unless ``allow_low_degree`` is
    set (small test graphs).  Impossible parities (constant odd degree on an
    odd number of vertices) raise instead of looping forever; any other
    distribution gets a rejection budget of 1000 resamples.
    """
    if n < 1:
        raise ConfigError("need n >= 1")
    dist.validate(1 if allow_low_degree else 3)
    if isinstance(dist, DiracDegrees) and (dist.r % 2 == 1) and (n % 2 == 1):
        raise ConfigError(
            f"parity impossible: {n} vertices of constant odd degree {dist.r} always sum odd"
        )
    for _ in range(MAX_PARITY_REJECTIONS):
        deg = dist.sample(n, rng)
        if int(deg.sum()) % 2 == 0:
            return DegreeSequence(deg)
    raise ConfigError(f"even-parity rejection budget ({MAX_PARITY_REJECTIONS}) exceeded")


# ---------------------------------------------------------------------------
# multigraphs
# ---------------------------------------------------------------------------

class MultiGraph:
    """Undirected multigraph on vertices 0..n-1 with explicit loops/multi-edges.

    Edges are stored as a canonical sorted list of (u, v) with u <= v, one
    entry per parallel edge; a self-loop appears as (v, v).  Adjacency is kept
    in CSR form with self-loops excluded (they never affect spin interactions)
    and counted separately.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = int(n)
        es = [(u, v) if u <= v else (v, u) for (u, v) in edges]
        es.sort()
        self.edges: list[tuple[int, int]] = es
        deg = np.zeros(self.n, dtype=np.int64)
        loops = np.zeros(self.n, dtype=np.int64)
        nbr_lists: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in es:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ConfigError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                loops[u] += 1
                deg[u] += 2
            else:
                deg[u] += 1
                deg[v] += 1
                nbr_lists[u].append(v)
                nbr_lists[v].append(u)
        self.degrees = deg
        self.loops = loops
        counts = np.fromiter((len(ns) for ns in nbr_lists), dtype=np.int64, count=self.n)
        self.nbr_indptr = np.concatenate(([0], np.cumsum(counts)))
        self.nbr_flat = np.fromiter(
            (w for ns in nbr_lists for w in sorted(ns)), dtype=np.int64,
            count=int(counts.sum()),
        )
        eu = np.fromiter((e[0] for e in es), dtype=np.int64, count=len(es))
        ev = np.fromiter((e[1] for e in es), dtype=np.int64, count=len(es))
        self.edge_u = eu
        self.edge_v = ev

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Non-loop neighbors of v, one entry per parallel edge."""
        return self.nbr_flat[self.nbr_indptr[v]:self.nbr_indptr[v + 1]]

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.degrees)

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.edge_count})"


def is_connected(g: MultiGraph) -> bool:
    """Breadth-first reachability; vertices with self-loops only do not help."""
    if g.n == 0:
        return True
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if not seen[w]:
                seen[w] = True
                queue.append(int(w))
    return bool(seen.all())


def edge_set_difference(g: MultiGraph, g2: MultiGraph) -> int:
    """Size of the symmetric difference of the edge multisets under identity labeling."""
    if g.n != g2.n:
        raise ConfigError(f"vertex counts differ: {g.n} vs {g2.n}")
    c1 = Counter(g.edges)
    c2 = Counter(g2.edges)
    keys = set(c1) | set(c2)
    return sum(abs(c1[k] - c2[k]) for k in keys)


# ---------------------------------------------------------------------------
# stub matchings: static and dynamic constructions
# ---------------------------------------------------------------------------

class StubMatching:
    """Perfect matching on points 1..2m, stored as a 1-based partner array.

    ``partner[i]`` is the point matched with i; index 0 is unused.  The
    dynamic extension steps follow the relocation rules exactly, so iterating
    them from the empty matching is distributed uniformly over matchings.
    """

    __slots__ = ("partner",)

    def __init__(self, partner: np.ndarray | None = None):
        if partner is None:
            partner = np.zeros(1, dtype=np.int64)
        self.partner = partner

    @classmethod
    def empty(cls) -> "StubMatching":
        return cls()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "StubMatching":
        pl = list(pairs)
        npts = 2 * len(pl)
        partner = np.zeros(npts + 1, dtype=np.int64)
        for a, b in pl:
            if not (1 <= a <= npts and 1 <= b <= npts) or a == b:
                raise ConfigError(f"bad pair ({a},{b}) for {npts} points")
            if partner[a] or partner[b]:
                raise ConfigError(f"point reused in pair ({a},{b})")
            partner[a] = b
            partner[b] = a
        return cls(partner)

    @property
    def num_points(self) -> int:
        return self.partner.size - 1

    @property
    def num_pairs(self) -> int:
        return self.num_points // 2

    def pairs(self) -> frozenset[tuple[int, int]]:
        """Canonical (min, max) pair set."""
        out = set()
        for i in range(1, self.num_points + 1):
            j = int(self.partner[i])
            if i < j:
                out.add((i, j))
        return frozenset(out)

    def copy(self) -> "StubMatching":
        return StubMatching(self.partner.copy())

    def _append_slots(self, k: int) -> None:
        self.partner = np.concatenate([self.partner, np.zeros(k, dtype=np.int64)])

    def extend_dynamic(self, rng: np.random.Generator) -> None:
        """One relocation step: add points 2m+1, 2m+2.

        Draw u uniform on {1..2m+1}.  If u = 2m+1 the new points pair with
        each other; otherwise u hands its old partner to 2m+1 and pairs with
        2m+2.
        """
        m2 = self.num_points
        self._append_slots(2)
        p = self.partner
        a, b = m2 + 1, m2 + 2
        u = int(rng.integers(1, m2 + 2))
        if u == a:
            p[a], p[b] = b, a
        else:
            q = int(p[u])
            p[u], p[b] = b, u
            p[a], p[q] = q, a

    def extend_dynamic_pairwise(
        self,
        rng: np.random.Generator,
        choices: tuple[int, int] | None = None,
    ) -> tuple[int, int]:
        """One two-draw step: add points 2m+1, 2m+2 using draws (u1, u2).

        u1 is uniform on {1..2m}, u2 on {1..2m+1}.  If u2 = 2m+1 the new
        points pair together.  Otherwise 2m+1 pairs with u1 and 2m+2 with u2
        (only with u2 when u1 = u2), and the leftover widowed points, if any,
        pair with each other.  Returns the draws so callers can replay them.
        """
        m2 = self.num_points
        a, b = m2 + 1, m2 + 2
        if choices is not None:
            u1, u2 = choices
        elif m2 == 0:
            u1, u2 = 0, 1
        else:
            u1 = int(rng.integers(1, m2 + 1))
            u2 = int(rng.integers(1, m2 + 2))
        self._append_slots(2)
        p = self.partner
        if u2 == a or m2 == 0:
            p[a], p[b] = b, a
            return u1, u2
        if u1 == u2:
            q = int(p[u1])
            p[u1], p[b] = b, u1
            p[a], p[q] = q, a
            return u1, u2
        q1, q2 = int(p[u1]), int(p[u2])
        p[u1], p[a] = a, u1
        p[u2], p[b] = b, u2
        if q1 == u2:
            # u1 and u2 were partners; no widows remain
            return u1, u2
        p[q1], p[q2] = q2, q1
        return u1, u2


def dynamic_match_step(xi: StubMatching, rng: np.random.Generator) -> StubMatching:
    """Pure version of the single-draw relocation step."""
    out = xi.copy()
    out.extend_dynamic(rng)
    return out


def uniform_matching(num_points: int, rng: np.random.Generator) -> StubMatching:
    """Uniform perfect matching of 1..num_points via a random permutation."""
    if num_points % 2 != 0:
        raise ConfigError("cannot match an odd number of points")
    perm = rng.permutation(num_points) + 1
    partner = np.zeros(num_points + 1, dtype=np.int64)
    for i in range(0, num_points, 2):
        a, b = int(perm[i]), int(perm[i + 1])
        partner[a] = b
        partner[b] = a
    return StubMatching(partner)


def internal_match_count(xi: StubMatching, x: int) -> int:
    """Number of points in {1..x} whose partner is also in {1..x}.

    Each internally matched pair contributes 2.
    """
    if x % 2 != 0:
        raise ConfigError("prefix length x must be even")
    if x > xi.num_points:
        raise ConfigError(f"prefix {x} exceeds point count {xi.num_points}")
    if x == 0:
        return 0
    return int((xi.partner[1:x + 1] <= x).sum())


def stub_to_vertex_map(degrees: Sequence[int]) -> np.ndarray:
    """1-based stub index -> vertex id, for block-wise stub numbering."""
    deg = np.asarray(degrees, dtype=np.int64)
    owner = np.repeat(np.arange(deg.size, dtype=np.int64), deg)
    return np.concatenate(([-1], owner))  # index 0 unused


def matching_to_graph(xi: StubMatching, degrees: Sequence[int]) -> MultiGraph:
    """Collapse a stub matching to the multigraph it induces."""
    deg = np.asarray(degrees, dtype=np.int64)
    if int(deg.sum()) != xi.num_points:
        raise ConfigError("degrees do not account for all matched points")
    owner = stub_to_vertex_map(deg)
    edges = [(int(owner[i]), int(owner[xi.partner[i]]))
             for i in range(1, xi.num_points + 1) if i < xi.partner[i]]
    return MultiGraph(deg.size, edges)


def build_cm_static(degrees: DegreeSequence, rng: np.random.Generator) -> MultiGraph:
    """Configuration Model: uniform stub matching collapsed to a multigraph."""
    xi = uniform_matching(degrees.ell_n, rng)
    return matching_to_graph(xi, degrees.degrees)


def build_cm_dynamic(degrees: DegreeSequence, rng: np.random.Generator) -> tuple[MultiGraph, StubMatching]:
    """Configuration Model built by iterating the relocation step."""
    xi = StubMatching.empty()
    for _ in range(degrees.ell_n // 2):
        xi.extend_dynamic(rng)
    return matching_to_graph(xi, degrees.degrees), xi


# ---------------------------------------------------------------------------
# coupled growth of two configuration models
# ---------------------------------------------------------------------------

@dataclass
class CoupledCM:
    """Two stub matchings grown with a shared uniform-choice stream.

    The bases may have different total degree; the smaller graph's draws are
    reused for the larger one except for independent redraws, taken with
    probability ``delta_i = (L2-L1)/((L2+i-1)*(L1+i-1))`` at the i-th added
    stub, which land uniformly on the stubs present only in the larger
    universe.  With equal bases the choices are shared verbatim.
    """

    xi1: StubMatching
    xi2: StubMatching
    base_degrees1: np.ndarray
    base_degrees2: np.ndarray
    added_degrees: list[int] = field(default_factory=list)
    stubs_added: int = 0

    @property
    def base_ell1(self) -> int:
        return int(self.base_degrees1.sum())

    @property
    def base_ell2(self) -> int:
        return int(self.base_degrees2.sum())

    def degrees1(self) -> np.ndarray:
        return np.concatenate([self.base_degrees1, np.asarray(self.added_degrees, dtype=np.int64)])

    def degrees2(self) -> np.ndarray:
        return np.concatenate([self.base_degrees2, np.asarray(self.added_degrees, dtype=np.int64)])

    def graphs(self) -> tuple[MultiGraph, MultiGraph]:
        return (matching_to_graph(self.xi1, self.degrees1()),
                matching_to_graph(self.xi2, self.degrees2()))

    def _vertex_key(self, which: int, v: int) -> int:
        # Common labeling: shared base vertices by id, added vertices by
        # negative offset so they align across the two graphs.
        base_n = self.base_degrees1.size if which == 1 else self.base_degrees2.size
        if v < base_n:
            return v
        return -(v - base_n + 1)

    def mismatch(self) -> int:
        """|E1 symdiff E2| as labeled edge multisets, computed from the matchings."""
        counts: Counter = Counter()
        for which, xi, deg in ((1, self.xi1, self.degrees1()), (2, self.xi2, self.degrees2())):
            owner = stub_to_vertex_map(deg)
            sign = 1 if which == 1 else -1
            for i in range(1, xi.num_points + 1):
                j = int(xi.partner[i])
                if i < j:
                    a = self._vertex_key(which, int(owner[i]))
                    b = self._vertex_key(which, int(owner[j]))
                    counts[(min(a, b), max(a, b))] += sign
        return sum(abs(c) for c in counts.values())


def couple_cm_pair(
    degrees1: DegreeSequence,
    degrees2: DegreeSequence,
    rng: np.random.Generator,
) -> CoupledCM:
    """Start a coupling from two independently built static matchings."""
    if degrees2.ell_n < degrees1.ell_n:
        raise ConfigError("second base must have total degree >= first")
    xi1 = uniform_matching(degrees1.ell_n, rng)
    xi2 = uniform_matching(degrees2.ell_n, rng)
    return CoupledCM(xi1, xi2, degrees1.degrees.copy(), degrees2.degrees.copy())


def couple_identical(degrees: DegreeSequence, rng: np.random.Generator) -> CoupledCM:
    """Coupling whose two bases are the same matching (zero initial mismatch)."""
    xi = uniform_matching(degrees.ell_n, rng)
    return CoupledCM(xi, xi.copy(), degrees.degrees.copy(), degrees.degrees.copy())


def grow_coupled_pair(
    pair: CoupledCM,
    new_degrees: Sequence[int],
    rng: np.random.Generator,
) -> CoupledCM:
    """Extend both graphs by the given vertices, sharing the uniform stream.

    Stubs are added two at a time via the two-draw relocation step.  Each
    draw made for the smaller graph is reused for the larger one unless an
    independent redraw fires; redraws pick uniformly among the stubs the
    larger universe has and the smaller lacks (kept at the top of its range
    as growth proceeds, i.e. ids ``2m1+1-shift .. 2m1`` map to ``2m2+1-shift
    .. 2m2``).
    """
    out = CoupledCM(
        pair.xi1.copy(), pair.xi2.copy(),
        pair.base_degrees1, pair.base_degrees2,
        list(pair.added_degrees), pair.stubs_added,
    )
    total_new = int(sum(new_degrees))
    if total_new % 2 != 0:
        raise ConfigError("added stubs must come in pairs (even total added degree)")
    L1, L2 = out.base_ell1, out.base_ell2
    shift = L2 - L1
    for _ in range(total_new // 2):
        m1 = out.xi1.num_points
        # draws for the smaller graph
        if m1 == 0:
            u1, u2 = 0, 1
        else:
            u1 = int(rng.integers(1, m1 + 1))
            u2 = int(rng.integers(1, m1 + 2))
        out.xi1.extend_dynamic_pairwise(rng, choices=(u1, u2))
        if shift == 0:
            out.xi2.extend_dynamic_pairwise(rng, choices=(u1, u2))
        else:
            # the offset map sends the smaller graph's "pair the new points"
            # draw u2 = 2m1+1 to the larger graph's own 2m2+1
            v1 = _lift_choice(u1, out.stubs_added + 1, L1, L2, shift, rng)
            v2 = _lift_choice(u2, out.stubs_added + 2, L1, L2, shift, rng)
            out.xi2.extend_dynamic_pairwise(rng, choices=(v1, v2))
        out.stubs_added += 2
    out.added_degrees.extend(int(d) for d in new_degrees)
    return out


def _lift_choice(u: int, i: int, L1: int, L2: int, shift: int, rng: np.random.Generator) -> int:
    """Map a draw on the smaller universe to the larger, with the redraw rule."""
    delta_i = shift / ((L2 + i - 1) * (L1 + i - 1))
    if rng.random() < delta_i:
        return L1 + 1 + int(rng.integers(0, shift))  # uniform over the extra stubs
    return u if u <= L1 else u + shift


# ---------------------------------------------------------------------------
# Erdos-Renyi and deterministic reference families
# ---------------------------------------------------------------------------

def build_er(n: int, p: float, rng: np.random.Generator) -> MultiGraph:
    """Simple graph; each unordered pair independently present with probability p."""
    if not (0.0 <= p <= 1.0):
        raise ConfigError(f"need 0 <= p <= 1, got {p}")
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    return MultiGraph(n, edges)


def build_complete(n: int) -> MultiGraph:
    iu, ju = np.triu_indices(n, k=1)
    return MultiGraph(n, list(zip(iu.tolist(), ju.tolist())))


def build_torus(L: int) -> MultiGraph:
    """L x L square lattice with periodic boundary (degree 4 everywhere)."""
    if L < 1:
        raise ConfigError("torus side must be >= 1")
    edges = []
    for r in range(L):
        for c in range(L):
            v = r * L + c
            edges.append((v, r * L + (c + 1) % L))
            edges.append((v, ((r + 1) % L) * L + c))
    # L=1 and L=2 wrap onto loops/doubled edges; keep them as the lattice gives
    return MultiGraph(L * L, edges)


def build_hypercube(dim: int) -> MultiGraph:
    """dim-dimensional hypercube: 2^dim vertices of degree dim."""
    if dim < 1:
        raise ConfigError("hypercube dimension must be >= 1")
    edges = []
    for v in range(1 << dim):
        for b in range(dim):
            w = v ^ (1 << b)
            if w > v:
                edges.append((v, w))
    return MultiGraph(1 << dim, edges)


def build_reference_graph(family: str, size: int) -> MultiGraph:
    """Dispatch for ``complete n`` / ``torus L`` / ``hypercube n``."""
    if family == "complete":
        return build_complete(size)
    if family == "torus":
        return build_torus(size)
    if family == "hypercube":
        return build_hypercube(size)
    raise ConfigError(f"unknown reference family {family!r}")


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def write_edge_list(g: MultiGraph, path) -> None:
    """Plain text: header ``n m`` then one ``u v`` line per edge (0-based)."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.edge_count}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> MultiGraph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ConfigError(f"{path}: expected header 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ConfigError(f"{path}: bad edge line {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise ConfigError(f"{path}: header promises {m} edges, found {len(edges)}")
    return MultiGraph(n, edges)


def write_degree_file(degrees: DegreeSequence, path) -> None:
    with open(path, "w") as fh:
        for d in degrees.degrees:
            fh.write(f"{int(d)}\n")


def read_degree_file(path) -> DegreeSequence:
    with open(path) as fh:
        vals = [int(line.strip()) for line in fh if line.strip()]
    return DegreeSequence(vals)
