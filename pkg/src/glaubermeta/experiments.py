"""Reproducible experiment orchestration.

Every experiment takes one master seed and derives all replica randomness
from it, so a rerun with the same configuration produces byte-identical
primary outputs (the manifest additionally records wall-clock times, which
are metadata, not primary output).  Results are plain tables with fixed CSV
headers plus JSON summaries and two-column plot data.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numba import njit, uint64

from . import __version__ as _pkg_version
from .bounds import er_leading_gamma, gamma_lower, gamma_upper
from .dynamics import _splitmix64, _uniform01, _xoshiro_init, replica_seed
from .energy import ModelParams, SpinConfig, boundary_edge_count
from .errors import ConfigError
from .graphs import (DegreeSequence, DiracDegrees, MultiGraph, build_er,
                     couple_cm_pair, grow_coupled_pair, parse_degree_spec,
                     sample_degrees)
from .landscape import energy_barrier, sorted_flip_path

_F = "%.12g"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return _F % x
    return str(x)


# ---------------------------------------------------------------------------
# result container
# ---------------------------------------------------------------------------

@dataclass
class ExperimentResult:
    """A named table (fixed header), a summary dict, and plot series."""

    name: str
    header: tuple[str, ...]
    rows: list[tuple]
    summary: dict
    series: dict[str, list[tuple[float, float]]] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(_fmt(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {"experiment": self.name, "summary": self.summary,
               "header": list(self.header),
               "rows": [[x if not isinstance(x, float) else float(_F % x) for x in row]
                        for row in self.rows]}
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"

    def to_plotdata(self) -> dict[str, str]:
        out = {}
        for sname, pts in self.series.items():
            out[sname] = "\n".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + "\n"
        return out


def emit_report(result: ExperimentResult, fmt: str, out_dir, *, stem: str | None = None) -> list[Path]:
    """Write the declared schema for one result; returns the created paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = stem or result.name
    paths = []
    if fmt == "csv":
        p = out_dir / f"{stem}.csv"
        p.write_text(result.to_csv())
        paths.append(p)
    elif fmt == "json":
        p = out_dir / f"{stem}.json"
        p.write_text(result.to_json())
        paths.append(p)
    elif fmt == "plotdata":
        series = result.to_plotdata()
        if not series:
            p = out_dir / f"{stem}.dat"
            p.write_text("")
            paths.append(p)
        for sname, text in series.items():
            p = out_dir / f"{stem}_{sname}.dat"
            p.write_text(text)
            paths.append(p)
    else:
        raise ConfigError(f"unknown output format {fmt!r} (csv|json|plotdata)")
    return paths


# ---------------------------------------------------------------------------
# log-log slope helper
# ---------------------------------------------------------------------------

def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y on log x over the strictly positive points."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    keep = (xs > 0) & (ys > 0)
    if keep.sum() < 2:
        raise ConfigError("need at least two positive points for a log-log slope")
    lx, ly = np.log(xs[keep]), np.log(ys[keep])
    return float(np.polyfit(lx, ly, 1)[0])


# ---------------------------------------------------------------------------
# coupling decay
# ---------------------------------------------------------------------------

def coupling_decay_experiment(n: int, degree_r: int, t_grid, seeds: int,
                              master_seed: int) -> ExperimentResult:
    """Mismatch between two coupled configuration models as vertices are added.

    Two independent bases on the same degree sequence are grown with the
    shared-choice scheme; for each t the fraction of seeds with differing
    edge multisets and the mean mismatch size are recorded.  Under the
    literal shared-stream rules, re-pairing of widowed stubs keeps injecting
    disagreement, so the mismatch levels off at a positive plateau instead of
    decaying like 1/t; both measures are reported as observed.
    """
    t_grid = sorted({int(t) + (int(t) * degree_r % 2) for t in t_grid})
    frac = np.zeros(len(t_grid))
    mean_mm = np.zeros(len(t_grid))
    for s in range(seeds):
        rng = np.random.default_rng(replica_seed(master_seed, s))
        ds = sample_degrees(DiracDegrees(degree_r), n, rng)
        pair = couple_cm_pair(ds, ds, rng)
        done = 0
        for i, t in enumerate(t_grid):
            pair = grow_coupled_pair(pair, [degree_r] * (t - done), rng)
            done = t
            mm = pair.mismatch()
            frac[i] += mm > 0
            mean_mm[i] += mm
    frac /= seeds
    mean_mm /= seeds
    rows = [(t, float(frac[i]), float(mean_mm[i])) for i, t in enumerate(t_grid)]
    summary = {
        "n": n, "degree": degree_r, "seeds": seeds,
        "slope_mismatch_fraction": _safe_slope(t_grid, frac),
        "slope_mean_mismatch": _safe_slope(t_grid, mean_mm),
    }
    return ExperimentResult(
        name="coupling_decay",
        header=("t", "mismatch_fraction", "mean_mismatch"),
        rows=rows, summary=summary,
        series={"fraction": [(float(t), float(f)) for t, f in zip(t_grid, frac)],
                "mean": [(float(t), float(m)) for t, m in zip(t_grid, mean_mm)]},
    )


def _safe_slope(xs, ys):
    try:
        return loglog_slope(xs, ys)
    except ConfigError:
        return None


def coupling_barrier_bound_check(n1: int, n2: int, degree_r: int, t: int, seeds: int,
                                 master_seed: int, J: float, h: float) -> ExperimentResult:
    """Exact barrier difference of two coupled graphs against J*k + h*|n2-n1|.

    Both bases are grown by the same t vertices; k is the realized edge
    mismatch under the coupling's labeling.  Rows with a disconnected graph
    are marked (the bound is stated for connected graphs) but still listed.
    """
    from .graphs import is_connected
    if (n1 + t) > 12 or (n2 + t) > 12:
        raise ConfigError("exact rows need n + t <= 12")
    params = ModelParams(J, h)
    rows = []
    violations = 0
    for s in range(seeds):
        rng = np.random.default_rng(replica_seed(master_seed, 7_000 + s))
        ds1 = sample_degrees(DiracDegrees(degree_r), n1, rng)
        ds2 = sample_degrees(DiracDegrees(degree_r), n2, rng)
        pair = couple_cm_pair(ds1, ds2, rng)
        if t:
            pair = grow_coupled_pair(pair, [degree_r] * t, rng)
        g1, g2 = pair.graphs()
        k = pair.mismatch()
        gam1 = energy_barrier(g1, params)
        gam2 = energy_barrier(g2, params)
        bound = J * k + h * abs(g2.n - g1.n)
        ok = abs(gam1 - gam2) <= bound + 1e-9
        connected = is_connected(g1) and is_connected(g2)
        if connected and not ok:
            violations += 1
        rows.append((s, k, gam1, gam2, abs(gam1 - gam2), bound, connected, ok))
    return ExperimentResult(
        name="coupling_barrier_bound",
        header=("seed", "mismatch_k", "gamma_1", "gamma_2", "abs_diff", "bound",
                "connected", "within_bound"),
        rows=rows,
        summary={"violations_on_connected": violations, "seeds": seeds,
                 "n1": n1, "n2": n2, "t": t, "J": J, "h": h},
    )


# ---------------------------------------------------------------------------
# matching moments and concentration
# ---------------------------------------------------------------------------

def expected_internal_count(x: int, t: int) -> float:
    """Closed-form E[z_{x,t}] for the dynamic construction."""
    if t == 0:
        return float(x)
    return x * (x - 1) / (x + 2 * t - 1)


def expected_internal_count_sq(x: int, t: int) -> float:
    """Closed-form E[z_{x,t}^2]."""
    if t == 0:
        return float(x * x)
    return x * (x - 1) * (x * (x - 3) + 4 * t) / ((x + 2 * t - 1) * (x + 2 * t - 3))


def scaled_variance_formula(x: int, t: int) -> float:
    """Displayed variance of w_{x,t} = z_{x,t} / (x + 2t), t >= 1."""
    if t < 1:
        raise ConfigError("the scaled-variance display starts at t = 1")
    s = t - 1
    lead = (x / (x + 2 * (s + 1))) * ((x - 1) / (x + 2 * (s + 1))) / (x + 2 * s + 1)
    inner = (4 * (s + 1) / (x + 2 * s - 1)
             + (x - 3) / (1 + 2 * s / x - 1 / x)
             - (x - 1) / (1 + 2 * s / x + 1 / x))
    return lead * inner


@njit(cache=True, nogil=True)
def _grow_partner_array(num_points, seed):
    """Dynamic single-draw growth to num_points, as a 1-based partner array."""
    partner = np.zeros(num_points + 1, dtype=np.int64)
    rng = _xoshiro_init(seed)
    m2 = 0
    while m2 < num_points:
        a = m2 + 1
        b = m2 + 2
        u = 1 + int(_uniform01(rng) * (m2 + 1))
        if u > m2 + 1:
            u = m2 + 1
        if u == a:
            partner[a] = b
            partner[b] = a
        else:
            q = partner[u]
            partner[u] = b
            partner[b] = u
            partner[a] = q
            partner[q] = a
        m2 += 2
    return partner


def matching_moment_experiment(x_list, t_list, replicas: int, master_seed: int) -> ExperimentResult:
    """Empirical first/second moments of the internal-pair count z_{x,t}
    against the closed forms, plus the scaled-variance display."""
    from .graphs import StubMatching, internal_match_count
    rows = []
    worst_z = 0.0
    for x in x_list:
        if x % 2 != 0:
            raise ConfigError("prefix x must be even")
        for t in t_list:
            zs = np.empty(replicas)
            for r in range(replicas):
                rng = np.random.default_rng(replica_seed(master_seed, 1000 * x + 10 * t + r))
                xi = StubMatching.empty()
                for _ in range(x // 2 + t):
                    xi.extend_dynamic(rng)
                zs[r] = internal_match_count(xi, x)
            m_emp = float(zs.mean())
            m2_emp = float((zs ** 2).mean())
            se_m = float(zs.std(ddof=1) / math.sqrt(replicas))
            se_m2 = float((zs ** 2).std(ddof=1) / math.sqrt(replicas))
            m_th = expected_internal_count(x, t)
            m2_th = expected_internal_count_sq(x, t)
            z_m = abs(m_emp - m_th) / se_m if se_m > 0 else 0.0
            z_m2 = abs(m2_emp - m2_th) / se_m2 if se_m2 > 0 else 0.0
            worst_z = max(worst_z, z_m, z_m2)
            wvar = scaled_variance_formula(x, t) if t >= 1 else float("nan")
            rows.append((x, t, m_emp, se_m, m_th, m2_emp, se_m2, m2_th, wvar))
    return ExperimentResult(
        name="matching_moments",
        header=("x", "t", "mean_emp", "mean_se", "mean_theory",
                "m2_emp", "m2_se", "m2_theory", "wvar_theory"),
        rows=rows,
        summary={"replicas": replicas, "worst_z_score": worst_z},
    )


def matching_concentration_experiment(m_list, alpha: float, replicas: int,
                                      master_seed: int) -> ExperimentResult:
    """Max deviation of the crossing count x - z_{x,(M-x)/2} from
    x(M-x)/(M-1) over the prefix grid x_i = i * floor(M^alpha), and the
    fitted growth exponent across M (the two-thirds-of-alpha law predicts
    M^(1-alpha/3))."""
    rows = []
    max_devs = []
    for m_points in m_list:
        m_points = int(m_points)
        if m_points % 2:
            raise ConfigError("M must be even")
        step = max(2, int(m_points ** alpha) & ~1)
        xs = np.arange(step, m_points, step, dtype=np.int64)
        devs = np.empty(replicas)
        for r in range(replicas):
            seed = np.uint64(replica_seed(master_seed, 31 * m_points + r) & 0xFFFFFFFFFFFFFFFF)
            partner = _grow_partner_array(m_points, seed)
            pair_max = np.maximum(np.arange(1, m_points + 1), partner[1:])
            pair_max = np.sort(pair_max[pair_max > np.arange(1, m_points + 1)])
            z_at = 2 * np.searchsorted(pair_max, xs, side="right")
            zbar = xs - z_at
            expect = xs * (m_points - xs) / (m_points - 1)
            devs[r] = np.max(np.abs(zbar - expect))
        rows.append((m_points, float(devs.mean()), float(devs.std(ddof=1) / math.sqrt(replicas))))
        max_devs.append(devs.mean())
    slope = loglog_slope([r[0] for r in rows], max_devs)
    return ExperimentResult(
        name="matching_concentration",
        header=("M", "mean_max_deviation", "se"),
        rows=rows,
        summary={"alpha": alpha, "replicas": replicas, "fitted_exponent": slope,
                 "predicted_exponent": 1.0 - alpha / 3.0},
        series={"deviation": [(float(r[0]), float(r[1])) for r in rows]},
    )


# ---------------------------------------------------------------------------
# Erdos-Renyi concentration
# ---------------------------------------------------------------------------

def er_concentration_experiment(n: int, p: float, sigma_size: int, samples: int,
                                master_seed: int, *, band: float = 0.1) -> ExperimentResult:
    """Edge boundary of random sigma against its mean p |sigma| (n - |sigma|)."""
    mu = p * sigma_size * (n - sigma_size)
    rows = []
    in_band = 0
    for s in range(samples):
        rng = np.random.default_rng(replica_seed(master_seed, 500 + s))
        g = build_er(n, p, rng)
        plus = rng.choice(n, size=sigma_size, replace=False)
        sigma = SpinConfig(n, frozenset(int(v) for v in plus))
        b = boundary_edge_count(g, sigma)
        ratio = b / mu
        ok = abs(ratio - 1.0) <= band
        in_band += ok
        rows.append((s, b, ratio, ok))
    return ExperimentResult(
        name="er_concentration",
        header=("sample", "boundary", "ratio_to_mu", "in_band"),
        rows=rows,
        summary={"n": n, "p": p, "sigma_size": sigma_size, "mu": mu,
                 "in_band": in_band, "samples": samples, "band": band},
    )


def er_exact_barrier_check(n: int, p: float, J: float, h: float,
                           master_seed: int) -> ExperimentResult:
    """Exact barrier of a small dense ER instance against (1/4) J n^2 p."""
    from .landscape import classify_states
    rng = np.random.default_rng(master_seed)
    g = build_er(n, p, rng)
    params = ModelParams(J, h)
    gamma = energy_barrier(g, params)
    lead = er_leading_gamma(n, p, J)
    _, meta, h_holds = classify_states(g, params)
    return ExperimentResult(
        name="er_exact_barrier",
        header=("n", "p", "gamma_star", "leading_order", "ratio", "h_holds"),
        rows=[(n, p, gamma, lead, gamma / lead, h_holds)],
        summary={"ratio": gamma / lead, "h_holds": h_holds,
                 "omega_meta_size": len(meta)},
    )


# ---------------------------------------------------------------------------
# barrier scaling
# ---------------------------------------------------------------------------

def barrier_scaling_experiment(degree_r: int, n_list, seeds: int, master_seed: int,
                               J: float, h: float, *, exact_cap: int = 20) -> ExperimentResult:
    """Per-instance exact barrier (small n) or [lower bound, path height] bracket.

    Emits Gamma*/n statistics; an empirical probe of the linear-growth trend,
    no convergence claim attached.
    """
    params = ModelParams(J, h)
    rows = []
    per_n: dict[int, list[float]] = {}
    for n in n_list:
        n = int(n)
        for s in range(seeds):
            rng = np.random.default_rng(replica_seed(master_seed, 100 * n + s))
            ds = sample_degrees(DiracDegrees(degree_r), n, rng)
            g = build_cm_sorted(ds, rng)
            path = sorted_flip_path(g, params)
            gl = gamma_lower(ds, J, h)
            gu = gamma_upper(ds, J, h)
            if n <= exact_cap:
                gam = energy_barrier(g, params)
                in_sandwich = (gl.gamma_minus - gu.slack <= gam + 1e-9) and (gam <= path.height + 1e-9)
                per_n.setdefault(n, []).append(gam / n)
            else:
                gam = float("nan")
                in_sandwich = gl.gamma_minus - gu.slack <= path.height + 1e-9
            rows.append((n, s, gam, path.height, gl.gamma_minus, gu.slack, in_sandwich))
    summary = {"degree": degree_r, "seeds": seeds, "J": J, "h": h}
    for n, vals in sorted(per_n.items()):
        arr = np.array(vals)
        summary[f"gamma_over_n_mean_n{n}"] = float(arr.mean())
        summary[f"gamma_over_n_sd_n{n}"] = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return ExperimentResult(
        name="barrier_scaling",
        header=("n", "seed", "gamma_exact", "path_height", "gamma_lower", "slack", "in_sandwich"),
        rows=rows, summary=summary,
        series={"gamma_over_n": [(float(n), float(np.mean(v))) for n, v in sorted(per_n.items())]},
    )


def build_cm_sorted(ds: DegreeSequence, rng: np.random.Generator) -> MultiGraph:
    """Configuration model with the canonical ascending-degree labeling."""
    from .graphs import build_cm_static
    return build_cm_static(ds, rng)


# ---------------------------------------------------------------------------
# configuration files and the run manifest
# ---------------------------------------------------------------------------

@dataclass
class RunManifest:
    experiment: str
    config: dict
    version: str
    outputs: dict[str, str]
    wall_seconds: float

    def to_json(self) -> str:
        return json.dumps({
            "experiment": self.experiment, "config": self.config,
            "version": self.version, "outputs": self.outputs,
            "wall_seconds": self.wall_seconds,
        }, indent=2, sort_keys=True) + "\n"


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def write_outputs(name: str, config: dict, results: list[ExperimentResult],
                  out_dir, fmt: str, started: float) -> RunManifest:
    """Emit every result in the requested format plus a JSON summary and manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: dict[str, str] = {}
    for res in results:
        for p in emit_report(res, fmt, out_dir):
            outputs[p.name] = sha256_file(p)
        if fmt != "json":
            p = out_dir / f"{res.name}_summary.json"
            p.write_text(json.dumps(res.summary, indent=2, sort_keys=True, default=str) + "\n")
            outputs[p.name] = sha256_file(p)
    manifest = RunManifest(experiment=name, config=config, version=_pkg_version,
                           outputs=outputs, wall_seconds=time.time() - started)
    (out_dir / "manifest.json").write_text(manifest.to_json())
    return manifest


_KNOWN_KEYS = {
    "generate": {"family", "n", "size", "p", "degrees", "seed", "out"},
    "landscape": {"graph", "family", "size", "J", "h", "seed", "out", "vtable"},
    "gates": {"graph", "family", "size", "J", "h", "seed", "out"},
    "bounds": {"degree_file", "degrees", "n", "J", "h", "seed", "out", "literal_paper",
               "slack_coefficient"},
    "simulate": {"graph", "family", "size", "degrees", "n", "J", "h", "betas", "replicas",
                 "seed", "out", "cap_events", "workers", "gate"},
    "couple": {"n", "degree", "t_grid", "seeds", "seed", "out", "exact_n1", "exact_n2",
               "exact_t", "exact_seeds", "J", "h"},
    "moments": {"x_list", "t_list", "replicas", "m_list", "alpha", "conc_replicas",
                "seed", "out"},
    "er-check": {"n", "p", "f", "sigma_size", "samples", "exact_n", "exact_p", "J", "h",
                 "seed", "out"},
    "scaling": {"degree", "n_list", "seeds", "J", "h", "seed", "out", "exact_cap"},
}


def load_config_file(path, section: str) -> dict:
    """INI-style config: one section per experiment; unknown keys are errors."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file {path} not found or unreadable")
    if section not in parser:
        return {}
    known = _KNOWN_KEYS.get(section)
    out = {}
    for key, value in parser[section].items():
        if known is not None and key not in known:
            raise ConfigError(f"unknown key {key!r} in config section [{section}]")
        out[key] = value
    return out
