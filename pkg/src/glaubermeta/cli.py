"""Command-line surface.

Subcommands: generate, landscape, gates, bounds, simulate, couple, moments,
er-check, scaling.  Common flags: --seed, --out, --format, --workers,
--cap-events, --config.  Exit codes: 0 success, 2 configuration error,
3 capacity error, 4 numeric failure.

All randomness flows from the mandatory --seed; reruns with the same flags
produce byte-identical primary outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import compute_bounds_report, power_law_quantities
from .dynamics import DEFAULT_EVENT_CAP, arrhenius_fit, exponential_law_test, run_replicas
from .energy import ModelParams
from .errors import CapacityError, ConfigError, GlauberMetaError, NumericError
from .experiments import (ExperimentResult, coupling_barrier_bound_check,
                          coupling_decay_experiment, er_concentration_experiment,
                          er_exact_barrier_check, load_config_file,
                          matching_concentration_experiment, matching_moment_experiment,
                          barrier_scaling_experiment, write_outputs)
from .graphs import (DegreeSequence, build_cm_static, build_er, build_reference_graph,
                     parse_degree_spec, read_degree_file, read_edge_list, sample_degrees,
                     write_degree_file, write_edge_list)
from .landscape import analyze_landscape, gate_sets


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--seed", type=int, required=True, help="master seed (u64); mandatory for reproducibility")
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--format", default="csv", choices=["csv", "json", "plotdata"])
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--cap-events", type=int, default=DEFAULT_EVENT_CAP)
    sp.add_argument("--config", default=None, help="INI config file; flags override its values")


def _load_graph(args) -> tuple:
    """Graph from --graph FILE or a generated family; returns (graph, label)."""
    if getattr(args, "graph", None):
        path = Path(args.graph)
        if not path.exists():
            raise ConfigError(f"graph file {path} does not exist")
        return read_edge_list(path), str(path)
    family = getattr(args, "family", None)
    if family is None:
        raise ConfigError("need --graph FILE or --family")
    if family == "cm":
        if not getattr(args, "degrees", None) or not getattr(args, "n", None):
            raise ConfigError("family cm needs --degrees and --n")
        rng = np.random.default_rng(args.seed)
        ds = sample_degrees(parse_degree_spec(args.degrees), args.n, rng)
        return build_cm_static(ds, rng), f"cm:{args.degrees}:n={args.n}"
    if family == "er":
        if getattr(args, "n", None) is None or getattr(args, "p", None) is None:
            raise ConfigError("family er needs --n and --p")
        rng = np.random.default_rng(args.seed)
        return build_er(args.n, args.p, rng), f"er:n={args.n}:p={args.p}"
    size = getattr(args, "size", None)
    if size is None:
        raise ConfigError(f"family {family} needs --size")
    return build_reference_graph(family, size), f"{family}:{size}"


def _apply_config(args, section: str) -> None:
    if not getattr(args, "config", None):
        return
    file_vals = load_config_file(args.config, section)
    for key, value in file_vals.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) in (None, argparse.SUPPRESS):
            setattr(args, attr, _coerce(value))


def _coerce(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in _parse_float_list(text)]


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    _apply_config(args, "generate")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    g, label = _load_graph(args)
    write_edge_list(g, out / "graph.edges")
    write_degree_file(DegreeSequence(g.degrees), out / "degrees.txt")
    print(f"wrote {out / 'graph.edges'} ({label}: n={g.n}, m={g.edge_count})")
    return 0


def _cmd_landscape(args) -> int:
    _apply_config(args, "landscape")
    g, label = _load_graph(args)
    params = ModelParams(args.J, args.h)
    rep = analyze_landscape(g, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "landscape.txt").write_text(rep.to_text())
    if args.vtable:
        (out / "vtable.csv").write_text(rep.v_table_csv())
    print(f"{label}: gamma_star={rep.gamma_star:.12g} h_holds={rep.h_holds}")
    return 0


def _cmd_gates(args) -> int:
    _apply_config(args, "gates")
    g, label = _load_graph(args)
    params = ModelParams(args.J, args.h)
    rep = gate_sets(g, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "gates.txt").write_text(rep.to_text())
    print(f"{label}: |C*|={len(rep.c_star)} |P*|={len(rep.p_star)} gamma_star={rep.gamma_star:.12g}")
    return 0


def _cmd_bounds(args) -> int:
    _apply_config(args, "bounds")
    if args.degree_file:
        ds = read_degree_file(args.degree_file)
    elif args.degrees and args.n:
        rng = np.random.default_rng(args.seed)
        ds = sample_degrees(parse_degree_spec(args.degrees), args.n, rng)
    else:
        raise ConfigError("bounds needs --degree-file or (--degrees and --n)")
    rep = compute_bounds_report(ds, args.J, args.h, slack_coefficient=args.slack_coefficient)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bounds.txt").write_text(rep.to_text())
    rows = ["quantity,value,slack,note"] + [",".join(r) for r in rep.rows()]
    (out / "bounds.csv").write_text("\n".join(rows) + "\n")
    if args.degrees and args.degrees.startswith("powerlaw") and args.literal_paper:
        spec = parse_degree_spec(args.degrees)
        q = power_law_quantities(spec.tau, spec.delta, args.J, args.h, literal=True)
        (out / "powerlaw_literal.json").write_text(json.dumps(q.__dict__, default=str) + "\n")
    print(f"gamma in [{rep.gamma_minus:.6g}, {rep.gamma_plus:.6g} (+{rep.slack:.3g})], weak_h={rep.weak_h}")
    return 0


def _cmd_simulate(args) -> int:
    _apply_config(args, "simulate")
    g, label = _load_graph(args)
    betas = _parse_float_list(args.betas)
    if sorted(betas) != betas:
        raise ConfigError("--betas must be strictly increasing")
    started = time.time()
    full = (1 << g.n) - 1
    gate = None
    if args.gate:
        gate = [int(tok, 16) for tok in Path(args.gate).read_text().split()]
    rows = []
    points = []
    last_taus = None
    for beta in betas:
        params = ModelParams(args.J, args.h, beta)
        ens = run_replicas(g, params, 0, [full], args.replicas, args.seed,
                           gate=gate, max_events=args.cap_events, workers=args.workers)
        for k, s in enumerate(ens.samples):
            rows.append((beta, k, s.tau, s.events, s.visited_gate, s.truncated))
        mean, se = ens.mean_stderr()
        points.append((beta, mean, se))
        last_taus = ens.taus
    summary = {"graph": label, "J": args.J, "h": args.h, "replicas": args.replicas}
    mean, se = points[-1][1], points[-1][2]
    summary.update({"mean": mean, "stderr": se})
    if last_taus is not None and last_taus.size >= 100:
        ks, _ = exponential_law_test(last_taus)
        summary["ks"] = ks
    if len(points) >= 3:
        fit = arrhenius_fit(points)
        summary.update({"slope": fit.slope, "intercept": fit.intercept})
    res = ExperimentResult(
        name="simulate",
        header=("beta", "replica", "tau", "events", "visited_gate", "truncated"),
        rows=rows, summary=summary,
        series={"arrhenius": [(b, float(np.log(m))) for b, m, _ in points]},
    )
    config = {"command": "simulate", "graph": label, "J": args.J, "h": args.h,
              "betas": betas, "replicas": args.replicas, "seed": args.seed,
              "cap_events": args.cap_events}
    write_outputs("simulate", config, [res], args.out, args.format, started)
    out = Path(args.out)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"{label}: " + ", ".join(f"E[tau|b={b:g}]={m:.6g}" for b, m, _ in points))
    return 0


def _cmd_couple(args) -> int:
    _apply_config(args, "couple")
    started = time.time()
    t_grid = _parse_int_list(args.t_grid)
    res = coupling_decay_experiment(args.n, args.degree, t_grid, args.seeds, args.seed)
    results = [res]
    if args.exact_n1:
        results.append(coupling_barrier_bound_check(
            args.exact_n1, args.exact_n2 or args.exact_n1, args.degree,
            args.exact_t, args.exact_seeds, args.seed, args.J, args.h))
    config = {"command": "couple", "n": args.n, "degree": args.degree,
              "t_grid": t_grid, "seeds": args.seeds, "seed": args.seed}
    write_outputs("couple", config, results, args.out, args.format, started)
    print(f"slope(fraction)={res.summary['slope_mismatch_fraction']}, "
          f"slope(mean)={res.summary['slope_mean_mismatch']}")
    return 0


def _cmd_moments(args) -> int:
    _apply_config(args, "moments")
    started = time.time()
    res = matching_moment_experiment(_parse_int_list(args.x_list),
                                     _parse_int_list(args.t_list),
                                     args.replicas, args.seed)
    results = [res]
    if args.m_list:
        results.append(matching_concentration_experiment(
            _parse_int_list(args.m_list), args.alpha, args.conc_replicas, args.seed))
    config = {"command": "moments", "x_list": args.x_list, "t_list": args.t_list,
              "replicas": args.replicas, "seed": args.seed}
    write_outputs("moments", config, results, args.out, args.format, started)
    print(f"worst z-score {res.summary['worst_z_score']:.2f}")
    return 0


def _cmd_er_check(args) -> int:
    _apply_config(args, "er-check")
    started = time.time()
    p = args.p if args.p is not None else {"ln": float(np.log(args.n))}.get(args.f, 0.0) / args.n
    if p <= 0:
        raise ConfigError("need --p or --f ln")
    res = er_concentration_experiment(args.n, p, args.sigma_size or args.n // 2,
                                      args.samples, args.seed)
    results = [res]
    if args.exact_n:
        results.append(er_exact_barrier_check(args.exact_n, args.exact_p, args.J, args.h, args.seed))
    config = {"command": "er-check", "n": args.n, "p": p, "samples": args.samples,
              "seed": args.seed}
    write_outputs("er-check", config, results, args.out, args.format, started)
    print(f"in-band {res.summary['in_band']}/{res.summary['samples']}")
    return 0


def _cmd_scaling(args) -> int:
    _apply_config(args, "scaling")
    started = time.time()
    res = barrier_scaling_experiment(args.degree, _parse_int_list(args.n_list),
                                     args.seeds, args.seed, args.J, args.h,
                                     exact_cap=args.exact_cap)
    config = {"command": "scaling", "degree": args.degree, "n_list": args.n_list,
              "seeds": args.seeds, "J": args.J, "h": args.h, "seed": args.seed}
    write_outputs("scaling", config, [res], args.out, args.format, started)
    bad = sum(1 for r in res.rows if not r[-1])
    print(f"{len(res.rows)} rows, {bad} outside the sandwich")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glaubermeta",
                                 description="Metastability toolkit for spin dynamics on random multigraphs")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_flags(sp):
        sp.add_argument("--graph", default=None, help="edge-list file")
        sp.add_argument("--family", default=None,
                        choices=["cm", "er", "complete", "torus", "hypercube"])
        sp.add_argument("--size", type=int, default=None)
        sp.add_argument("--n", type=int, default=None)
        sp.add_argument("--p", type=float, default=None)
        sp.add_argument("--degrees", default=None, help="dirac:R or powerlaw:TAU:DELTA")

    sp = sub.add_parser("generate", help="build a graph and write edge-list/degree files")
    graph_flags(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_generate)

    sp = sub.add_parser("landscape", help="exact barrier / stability / metastable sets")
    graph_flags(sp)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.5)
    sp.add_argument("--vtable", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=_cmd_landscape)

    sp = sub.add_parser("gates", help="protocritical/critical gate sets")
    graph_flags(sp)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.5)
    _add_common(sp)
    sp.set_defaults(func=_cmd_gates)

    sp = sub.add_parser("bounds", help="analytic barrier bounds over a degree sequence")
    sp.add_argument("--degree-file", default=None)
    sp.add_argument("--degrees", default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.5)
    sp.add_argument("--slack-coefficient", type=float, default=1.0)
    sp.add_argument("--literal-paper", action="store_true",
                    help="also evaluate the displayed power-law scans verbatim")
    _add_common(sp)
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("simulate", help="hitting-time replicas over a beta grid")
    graph_flags(sp)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.5)
    sp.add_argument("--betas", required=True, help="comma-separated increasing grid")
    sp.add_argument("--replicas", type=int, default=100)
    sp.add_argument("--gate", default=None, help="file of hex gate configurations to mark")
    _add_common(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("couple", help="coupled-growth mismatch decay")
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--t-grid", default="10,18,32,56,100,178,316,562,1000")
    sp.add_argument("--seeds", type=int, default=200)
    sp.add_argument("--exact-n1", type=int, default=None)
    sp.add_argument("--exact-n2", type=int, default=None)
    sp.add_argument("--exact-t", type=int, default=4)
    sp.add_argument("--exact-seeds", type=int, default=20)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.2)
    _add_common(sp)
    sp.set_defaults(func=_cmd_couple)

    sp = sub.add_parser("moments", help="dynamic-matching moment checks")
    sp.add_argument("--x-list", default="2,4,6")
    sp.add_argument("--t-list", default="0,1,2,5")
    sp.add_argument("--replicas", type=int, default=20000)
    sp.add_argument("--m-list", default=None, help="even M grid for the concentration probe")
    sp.add_argument("--alpha", type=float, default=0.75)
    sp.add_argument("--conc-replicas", type=int, default=20)
    _add_common(sp)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("er-check", help="Erdos-Renyi boundary concentration")
    sp.add_argument("--n", type=int, default=200)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--f", default="ln", help="p = f(n)/n; supported: ln")
    sp.add_argument("--sigma-size", type=int, default=None)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--exact-n", type=int, default=None)
    sp.add_argument("--exact-p", type=float, default=0.9)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.5)
    _add_common(sp)
    sp.set_defaults(func=_cmd_er_check)

    sp = sub.add_parser("scaling", help="barrier-per-vertex trend probe")
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--n-list", default="8,12,16")
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--J", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.2)
    sp.add_argument("--exact-cap", type=int, default=20)
    _add_common(sp)
    sp.set_defaults(func=_cmd_scaling)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (NumericError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except GlauberMetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
