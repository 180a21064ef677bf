"""Continuous-time Metropolis (Glauber) simulation and hitting-time statistics.

The simulator is rejection-free: every event flips exactly one spin, chosen
with probability proportional to its rate exp(-beta * max(dH, 0)), and the
clock advances by an exponential holding time with mean 1 / (total rate).
At low temperature this replaces ~exp(beta * Gamma) wasted attempts per
accepted uphill move with a single draw while keeping the continuous-time
law exact.

Randomness is xoshiro256** seeded through splitmix64 (published generators,
period 2^256 - 1), embedded in the kernel so replicas are bit-reproducible
and safe to run on a thread pool.  Replica k of a run with master seed s
uses ``numpy.random.SeedSequence(s, spawn_key=(k,))`` to derive its state.

Hitting times follow the convention that the starting configuration must be
left first: the time reported is the first arrival in the target set at or
after the first jump, so starting inside the target yields a return time,
never zero.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse
import scipy.sparse.linalg
from numba import njit, uint64

from .energy import ModelParams, all_energies
from .errors import CapacityError, ConfigError, NumericError
from .graphs import MultiGraph
from .landscape import _mask_of

EXACT_CHAIN_CAP = 14
DEFAULT_EVENT_CAP = 10 ** 9


# ---------------------------------------------------------------------------
# embedded RNG
# ---------------------------------------------------------------------------

@njit(uint64(uint64), cache=True, nogil=True)
def _splitmix64(z):
    z = (z + uint64(0x9E3779B97F4A7C15)) & uint64(0xFFFFFFFFFFFFFFFF)
    z = ((z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)) & uint64(0xFFFFFFFFFFFFFFFF)
    z = ((z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)) & uint64(0xFFFFFFFFFFFFFFFF)
    return z ^ (z >> uint64(31))


@njit(cache=True, nogil=True)
def _xoshiro_init(seed):
    s = np.empty(4, dtype=np.uint64)
    z = uint64(seed)
    for i in range(4):
        z = _splitmix64(z)
        s[i] = z
    return s


@njit(cache=True, nogil=True)
def _xoshiro_next(s):
    x = s[1] * uint64(5)
    result = ((x << uint64(7)) | (x >> uint64(57))) * uint64(9)
    t = s[1] << uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = (s[3] << uint64(45)) | (s[3] >> uint64(19))
    return result


@njit(cache=True, nogil=True)
def _uniform01(s):
    return (_xoshiro_next(s) >> uint64(11)) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _in_sorted(arr, x):
    lo, hi = 0, arr.size
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.size and arr[lo] == x


@njit(cache=True, nogil=True)
def _kmc_hitting(indptr, nbrs, n, J, h, beta, start, targets, gate, max_events, seed):
    """One trajectory from `start` to the sorted target set.

    Returns (tau, events, gate_final, gate_any, returns_to_start, truncated).
    gate_final refers to the excursion since the last visit to `start`.
    """
    rng = _xoshiro_init(seed)
    state = start
    rates = np.empty(n)
    tau = 0.0
    events = 0
    gate_final = False
    gate_any = False
    returns = 0
    while True:
        if events >= max_events:
            return tau, events, gate_final, gate_any, returns, True
        total = 0.0
        for v in range(n):
            sv = 1.0 if (state >> v) & 1 else -1.0
            local = 0.0
            for k in range(indptr[v], indptr[v + 1]):
                local += 1.0 if (state >> nbrs[k]) & 1 else -1.0
            d = sv * (J * local + h)
            r = 1.0 if d <= 0.0 else math.exp(-beta * d)
            rates[v] = r
            total += r
        u = _uniform01(rng)
        while u <= 0.0:
            u = _uniform01(rng)
        tau += -math.log(u) / total
        pick = _uniform01(rng) * total
        acc = 0.0
        v_flip = n - 1
        for v in range(n):
            acc += rates[v]
            if pick < acc:
                v_flip = v
                break
        state = state ^ (1 << v_flip)
        events += 1
        if state == start:
            returns += 1
            gate_final = False
        if gate.size and _in_sorted(gate, state):
            gate_final = True
            gate_any = True
        if _in_sorted(targets, state):
            return tau, events, gate_final, gate_any, returns, False


@njit(cache=True, nogil=True)
def _kmc_occupancy(indptr, nbrs, n, J, h, beta, start, num_events, seed):
    """Time spent in each of the 2^n states over a fixed number of events."""
    rng = _xoshiro_init(seed)
    state = start
    occupancy = np.zeros(1 << n)
    rates = np.empty(n)
    for _ in range(num_events):
        total = 0.0
        for v in range(n):
            sv = 1.0 if (state >> v) & 1 else -1.0
            local = 0.0
            for k in range(indptr[v], indptr[v + 1]):
                local += 1.0 if (state >> nbrs[k]) & 1 else -1.0
            d = sv * (J * local + h)
            r = 1.0 if d <= 0.0 else math.exp(-beta * d)
            rates[v] = r
            total += r
        u = _uniform01(rng)
        while u <= 0.0:
            u = _uniform01(rng)
        occupancy[state] += -math.log(u) / total
        pick = _uniform01(rng) * total
        acc = 0.0
        v_flip = n - 1
        for v in range(n):
            acc += rates[v]
            if pick < acc:
                v_flip = v
                break
        state = state ^ (1 << v_flip)
    return occupancy


# ---------------------------------------------------------------------------
# public simulation API
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HittingSample:
    tau: float
    events: int
    visited_gate: bool        # on the final excursion from the start
    visited_gate_any: bool    # on any excursion
    returns_to_start: int
    truncated: bool


def replica_seed(master_seed: int, k: int) -> int:
    """Documented splittable derivation: SeedSequence(master, spawn_key=(k,))."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(k,))
    return int(ss.generate_state(1, np.uint64)[0])


def _sim_arrays(g: MultiGraph):
    if g.n > 63:
        raise CapacityError("bitmask simulation supports n <= 63")
    return g.nbr_indptr.astype(np.int64), g.nbr_flat.astype(np.int64)


def flip_rate(g: MultiGraph, sigma, v: int, params: ModelParams) -> float:
    """Metropolis rate exp(-beta * max(dH, 0)) of flipping v out of sigma."""
    from .energy import flip_delta
    d = flip_delta(g, sigma, v, params)
    return 1.0 if d <= 0 else math.exp(-params.beta * d)


def simulate_hitting(g: MultiGraph, params: ModelParams, start, targets, seed: int,
                     *, gate=None, max_events: int = DEFAULT_EVENT_CAP) -> HittingSample:
    """Run one rejection-free trajectory until the target set is hit.

    `targets` and `gate` are iterables of configurations (masks or
    SpinConfig); the gate is only marked, never absorbing.
    """
    if params.beta < 0:
        raise ConfigError("need beta >= 0")
    indptr, nbrs = _sim_arrays(g)
    start_mask = _mask_of(g, start)
    tset = np.array(sorted(_mask_of(g, t) for t in targets), dtype=np.int64)
    if tset.size == 0:
        raise ConfigError("target set must be nonempty")
    gset = (np.array(sorted(_mask_of(g, x) for x in gate), dtype=np.int64)
            if gate is not None else np.empty(0, dtype=np.int64))
    tau, events, gf, ga, returns, trunc = _kmc_hitting(
        indptr, nbrs, g.n, params.J, params.h, params.beta,
        start_mask, tset, gset, max_events, np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    return HittingSample(tau=float(tau), events=int(events), visited_gate=bool(gf),
                         visited_gate_any=bool(ga), returns_to_start=int(returns),
                         truncated=bool(trunc))


@dataclass
class HittingEnsemble:
    samples: list[HittingSample]

    @property
    def taus(self) -> np.ndarray:
        return np.array([s.tau for s in self.samples if not s.truncated])

    @property
    def truncated_count(self) -> int:
        return sum(1 for s in self.samples if s.truncated)

    def mean_stderr(self) -> tuple[float, float]:
        taus = self.taus
        if taus.size == 0:
            raise NumericError("all replicas were truncated; no mean available")
        if taus.size == 1:
            return float(taus[0]), float("inf")
        return float(taus.mean()), float(taus.std(ddof=1) / math.sqrt(taus.size))


def run_replicas(g: MultiGraph, params: ModelParams, start, targets, replicas: int,
                 master_seed: int, *, gate=None, max_events: int = DEFAULT_EVENT_CAP,
                 workers: int = 1) -> HittingEnsemble:
    """Independent replicas with derived per-replica seeds, folded in index order."""
    if replicas < 1:
        raise ConfigError("need at least one replica")
    seeds = [replica_seed(master_seed, k) for k in range(replicas)]

    def one(k: int) -> HittingSample:
        return simulate_hitting(g, params, start, targets, seeds[k],
                                gate=gate, max_events=max_events)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(one, range(replicas)))
    else:
        samples = [one(k) for k in range(replicas)]
    return HittingEnsemble(samples)


def estimate_mean_hitting(g: MultiGraph, params: ModelParams, start, targets,
                          replicas: int, master_seed: int,
                          *, max_events: int = DEFAULT_EVENT_CAP,
                          workers: int = 1) -> tuple[float, float]:
    """Sample mean and standard error of the hitting time over replicas."""
    if replicas < 2:
        raise ConfigError("need at least two replicas for a standard error")
    ens = run_replicas(g, params, start, targets, replicas, master_seed,
                       max_events=max_events, workers=workers)
    return ens.mean_stderr()


# ---------------------------------------------------------------------------
# fits and distributional tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArrheniusFit:
    betas: tuple[float, ...]
    log_means: tuple[float, ...]
    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float


def arrhenius_fit(points) -> ArrheniusFit:
    """Weighted least squares of log(mean tau) on beta.

    `points` is a sequence of (beta, mean, stderr); weights are the inverse
    delta-method variances (stderr/mean)^2.  The slope estimates the barrier,
    the intercept the log prefactor.
    """
    pts = [(float(b), float(m), float(se)) for b, m, se in points]
    if len(pts) < 3:
        raise ConfigError("Arrhenius fit needs at least 3 grid points")
    betas = np.array([p[0] for p in pts])
    means = np.array([p[1] for p in pts])
    ses = np.array([p[2] for p in pts])
    if np.any(means <= 0):
        raise NumericError("nonpositive mean in Arrhenius fit")
    y = np.log(means)
    var = (ses / means) ** 2
    w = np.where(var > 0, 1.0 / np.maximum(var, 1e-300), 1.0)
    sw = w.sum()
    bw = (w * betas).sum() / sw
    yw = (w * y).sum() / sw
    sxx = (w * (betas - bw) ** 2).sum()
    if sxx <= 0:
        raise NumericError("degenerate beta grid; fit is singular")
    slope = (w * (betas - bw) * (y - yw)).sum() / sxx
    intercept = yw - slope * bw
    return ArrheniusFit(
        betas=tuple(betas), log_means=tuple(y),
        slope=float(slope), intercept=float(intercept),
        slope_stderr=float(math.sqrt(1.0 / sxx)),
        intercept_stderr=float(math.sqrt(1.0 / sw + bw ** 2 / sxx)),
    )


def exponential_law_test(samples, *, threshold_factor: float = 1.0) -> tuple[float, bool]:
    """Kolmogorov-Smirnov statistic of tau / mean(tau) against Exp(1).

    Passes when D_N < threshold_factor * 1.36 / sqrt(N), the asymptotic 5%
    point of the KS null.
    """
    t = np.sort(np.asarray(list(samples), dtype=np.float64))
    n = t.size
    if n < 100:
        raise ConfigError("exponential-law test needs at least 100 samples")
    mean = t.mean()
    if not mean > 0 or t[0] == t[-1]:
        raise NumericError("degenerate sample for the exponential-law test")
    cdf = 1.0 - np.exp(-t / mean)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - cdf)
    d_minus = np.max(cdf - (i - 1) / n)
    stat = float(max(d_plus, d_minus))
    return stat, stat < threshold_factor * 1.36 / math.sqrt(n)


@dataclass(frozen=True)
class GatePassage:
    fraction: float            # final-excursion passages
    fraction_any: float        # passages on any excursion
    replicas: int
    truncated: int


def gate_passage_probability(g: MultiGraph, params: ModelParams, gate, replicas: int,
                             master_seed: int, *, max_events: int = DEFAULT_EVENT_CAP,
                             workers: int = 1) -> GatePassage:
    """Fraction of down-to-up crossings whose final excursion visits the gate."""
    n = g.n
    full = (1 << n) - 1
    ens = run_replicas(g, params, 0, [full], replicas, master_seed,
                       gate=gate, max_events=max_events, workers=workers)
    ok = [s for s in ens.samples if not s.truncated]
    if not ok:
        raise NumericError("all replicas truncated before crossing")
    frac = sum(1 for s in ok if s.visited_gate) / len(ok)
    frac_any = sum(1 for s in ok if s.visited_gate_any) / len(ok)
    return GatePassage(fraction=float(frac), fraction_any=float(frac_any),
                       replicas=len(ok), truncated=ens.truncated_count)


@dataclass(frozen=True)
class PrefactorPoint:
    beta: float
    k_hat: float
    stderr: float


def prefactor_estimate(g: MultiGraph, params: ModelParams, betas, replicas: int,
                       gamma_star: float, master_seed: int,
                       *, max_events: int = DEFAULT_EVENT_CAP,
                       workers: int = 1) -> list[PrefactorPoint]:
    """K_hat(beta) = exp(-beta Gamma*) * mean(tau), per beta; the large-beta
    trend is the prefactor estimate."""
    out = []
    for j, beta in enumerate(betas):
        p = ModelParams(params.J, params.h, float(beta))
        mean, se = estimate_mean_hitting(g, p, 0, [(1 << g.n) - 1], replicas,
                                         replica_seed(master_seed, 10_000 + j),
                                         max_events=max_events, workers=workers)
        scale = math.exp(-beta * gamma_star)
        out.append(PrefactorPoint(beta=float(beta), k_hat=mean * scale, stderr=se * scale))
    return out


# ---------------------------------------------------------------------------
# exact small-chain reference
# ---------------------------------------------------------------------------

def exact_mean_hitting_time(g: MultiGraph, params: ModelParams, start, targets) -> float:
    """Mean hitting time of the full 2^n continuous-time chain by linear solve.

    States in the target set are absorbing; for every other state s,
    t_s * R_s - sum_z c(s, z) t_z = 1 with R_s the total exit rate.
    """
    n = g.n
    if n > EXACT_CHAIN_CAP:
        raise CapacityError(f"exact chain solve supports n <= {EXACT_CHAIN_CAP}")
    energies = all_energies(g, params)
    size = energies.size
    tset = {_mask_of(g, t) for t in targets}
    start_mask = _mask_of(g, start)
    if start_mask in tset:
        raise ConfigError("exact solve expects the start outside the target set")
    keep = np.array([s for s in range(size) if s not in tset], dtype=np.int64)
    pos = -np.ones(size, dtype=np.int64)
    pos[keep] = np.arange(keep.size)
    rows, cols, vals = [], [], []
    for s in keep:
        total = 0.0
        for v in range(n):
            z = s ^ (1 << v)
            rate = math.exp(-params.beta * max(energies[z] - energies[s], 0.0))
            total += rate
            if pos[z] >= 0:
                rows.append(pos[s])
                cols.append(pos[z])
                vals.append(-rate)
        rows.append(pos[s])
        cols.append(pos[s])
        vals.append(total)
    a = scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(keep.size, keep.size))
    t = scipy.sparse.linalg.spsolve(a, np.ones(keep.size))
    return float(t[pos[start_mask]])


def gibbs_measure(g: MultiGraph, params: ModelParams) -> np.ndarray:
    """Equilibrium probabilities over all 2^n configurations."""
    energies = all_energies(g, params)
    w = np.exp(-params.beta * (energies - energies.min()))
    return w / w.sum()


def occupancy_frequencies(g: MultiGraph, params: ModelParams, num_events: int,
                          seed: int, *, start=0) -> np.ndarray:
    """Fraction of simulated time spent in each configuration."""
    indptr, nbrs = _sim_arrays(g)
    occ = _kmc_occupancy(indptr, nbrs, g.n, params.J, params.h, params.beta,
                         _mask_of(g, start), num_events,
                         np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    return occ / occ.sum()
