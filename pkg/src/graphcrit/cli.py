"""Command-line front end: analyze / simulate / rl-train / sweep.

Every output file starts with a metadata comment block (tool version,
fully resolved configuration, input digests) so reports are
self-describing, and nothing in an output depends on wall-clock state:
rerunning on identical inputs reproduces the files byte for byte.

Config precedence: CLI flags > config file (flat ``key = value`` lines,
keys mirroring flag names) > built-in defaults. Exit codes: 0 success,
1 user/input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .dynamics import (TraceBuildError, build_trace, detect_transition,
                       rolling_cross_correlation, write_trace_csv, write_xcorr_csv)
from .edges import DEFAULT_SWEEP_GRID, DEFAULT_THRESHOLD, classify_edges, threshold_sweep
from .embeddings import DEFAULT_DIM, fallback_table, load_embeddings, pca_2d
from .graphs import EdgeListParseError, load_series
from .growth import GrowthConfig, grow, write_corpus
from .rl import RewardConfig, train
from .svg import Panel, Series, render_chart, render_scatter
from .topology import (bc_diversity_correlation, centroid_distance_histogram,
                       louvain, node_metrics)

_USER_ERRORS = (EdgeListParseError, TraceBuildError, ValueError, KeyError,
                FileNotFoundError, NotADirectoryError, PermissionError, OSError)


class _CliParser(argparse.ArgumentParser):
    """argparse flags errors are user errors (exit 1, machine-readable)."""

    def error(self, message: str):
        raise ValueError(f"argument error: {message}")


# ---------------------------------------------------------------------------
# Option resolution
# ---------------------------------------------------------------------------

DEFAULTS: dict[str, Any] = {
    # shared
    "out": "out",
    "seed": 0,
    "threshold": DEFAULT_THRESHOLD,
    # analyze
    "snapshots": None,
    "embeddings": None,
    "fallback_embeddings": False,
    "fallback_dim": DEFAULT_DIM,
    "window": 50,
    "sustain": 10,
    "louvain_seed": 0,
    "louvain_resolution": 1.0,
    "histogram_bins": 30,
    "metrics_stride": 1,
    "surprise_per_snapshot": False,
    # simulate / rl environment
    "iterations": 100,
    "nodes_per_iter": 1,
    "edges_per_new_node": 3,
    "pref_weight": 1.0,
    "sem_weight": 1.0,
    "surprise_prob": 0.1,
    "centroids": 8,
    "dim": 64,
    "noise": 0.15,
    # sweep
    "thresholds": ",".join(str(t) for t in DEFAULT_SWEEP_GRID),
    # rl-train
    "episodes": 20,
    "steps": 30,
    "lr": 2.0,
    "lambda_d": 0.0,
    "lambda_se": 0.0,
    "lambda_alpha": 1.0,
    "d_target": -0.03,
    "alpha_target": 0.12,
}


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _coerce(value: str, like: Any) -> Any:
    if isinstance(like, bool):
        return str(value).strip().lower() in {"1", "true", "yes", "on"}
    if isinstance(like, int):
        return int(value)
    if isinstance(like, float):
        return float(value)
    return value


def resolve_options(args: argparse.Namespace) -> dict[str, Any]:
    """CLI flags > config file > defaults, with explicit result."""
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config)
    resolved = dict(DEFAULTS)
    for key, default in DEFAULTS.items():
        if key in file_values:
            resolved[key] = _coerce(file_values[key], default if default is not None else "")
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            resolved[key] = cli_value
    return resolved


def _growth_config(opts: dict[str, Any]) -> GrowthConfig:
    return GrowthConfig(
        seed=int(opts["seed"]),
        n_iterations=int(opts["iterations"]),
        nodes_per_iter=int(opts["nodes_per_iter"]),
        edges_per_new_node=int(opts["edges_per_new_node"]),
        pref_weight=float(opts["pref_weight"]),
        sem_weight=float(opts["sem_weight"]),
        surprise_prob=float(opts["surprise_prob"]),
        n_centroids=int(opts["centroids"]),
        embed_dim=int(opts["dim"]),
        embed_noise=float(opts["noise"]),
    )


# ---------------------------------------------------------------------------
# Report metadata
# ---------------------------------------------------------------------------

def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:16]


def _metadata(opts: dict[str, Any], used: Sequence[str],
              inputs: dict[str, str]) -> list[str]:
    lines = [f"graphcrit {__version__}"]
    lines += [f"config {key}={opts[key]}" for key in sorted(used)]
    lines += [f"input {name} sha256={digest}" for name, digest in sorted(inputs.items())]
    return lines


def _input_digests(snap_dir: Path, emb_path: Path | None) -> dict[str, str]:
    digests = {}
    for p in sorted(snap_dir.iterdir()):
        if p.suffix == ".edges":
            digests[p.name] = _digest(p)
    if emb_path is not None:
        digests[emb_path.name] = _digest(emb_path)
    return digests


def _fmt(x: float) -> str:
    return f"{x:.9g}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

_ANALYZE_KEYS = ("snapshots", "embeddings", "fallback_embeddings", "fallback_dim",
                 "threshold", "window", "sustain", "louvain_seed",
                 "louvain_resolution", "histogram_bins", "metrics_stride",
                 "surprise_per_snapshot", "seed")


def cmd_analyze(opts: dict[str, Any]) -> int:
    if not opts["snapshots"]:
        raise ValueError("analyze requires --snapshots DIR")
    snap_dir = Path(opts["snapshots"])
    series = load_series(snap_dir)

    emb_path: Path | None = None
    if opts["embeddings"]:
        emb_path = Path(opts["embeddings"])
        embeddings = load_embeddings(emb_path)
    elif opts["fallback_embeddings"]:
        embeddings = fallback_table(series.all_labels(), dim=int(opts["fallback_dim"]),
                                    seed=int(opts["seed"]))
    else:
        raise ValueError("no embedding source: pass --embeddings FILE or "
                         "--fallback-embeddings")

    meta = _metadata(opts, _ANALYZE_KEYS, _input_digests(snap_dir, emb_path))
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)

    trace = build_trace(series, embeddings, surprise_threshold=float(opts["threshold"]))
    xcorr = rolling_cross_correlation(trace, window=int(opts["window"]))
    transition = detect_transition(xcorr, sustain=int(opts["sustain"]))

    final = series.final
    flags, _stats = classify_edges(final, embeddings, threshold=float(opts["threshold"]))
    metrics = node_metrics(final, embeddings)
    assignment = louvain(final, resolution=float(opts["louvain_resolution"]),
                         seed=int(opts["louvain_seed"]))
    proj = pca_2d(embeddings, final.nodes)
    hist = centroid_distance_histogram(proj, assignment, n_bins=int(opts["histogram_bins"]))

    stride = max(1, int(opts["metrics_stride"]))
    bc_curve = []
    for snap in series.snapshots[::stride]:
        if snap.n_nodes < 3:
            continue
        r, degenerate = bc_diversity_correlation(snap, embeddings)
        bc_curve.append((snap.iteration, r, degenerate))

    # ---- single writer: everything computed, now emit -------------------
    write_trace_csv(trace, out / "trace.csv", header_comments=meta)
    write_xcorr_csv(xcorr, out / "cross_correlation.csv", header_comments=meta)

    with (out / "transition.txt").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        present = transition.transition_iteration is not None
        fh.write(f"transition_detected = {str(present).lower()}\n")
        fh.write(f"transition_iteration = "
                 f"{transition.transition_iteration if present else 'none'}\n")
        fh.write(f"sustain_length = {transition.sustain_length}\n")
        fh.write(f"pre_mean_r = {_fmt(transition.pre_mean_r)}\n")
        fh.write(f"post_mean_r = {_fmt(transition.post_mean_r)}\n")

    def write_edge_flags(path: Path, edge_flags) -> None:
        with path.open("w", encoding="utf-8") as fh:
            for line in meta:
                fh.write(f"# {line}\n")
            fh.write("source,target,cosine,surprising\n")
            for f in edge_flags:
                fh.write(f"{f.source},{f.target},{_fmt(f.cosine)},{int(f.surprising)}\n")

    write_edge_flags(out / "surprising_edges.csv", flags)
    if opts["surprise_per_snapshot"]:
        per_dir = out / "surprise"
        per_dir.mkdir(exist_ok=True)
        for snap in series:
            snap_flags, _ = classify_edges(snap, embeddings,
                                           threshold=float(opts["threshold"]))
            write_edge_flags(per_dir / f"surprising_{snap.iteration:04d}.csv",
                             snap_flags)

    with (out / "node_metrics.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("label,degree,betweenness,diversity,community\n")
        for m in metrics:
            fh.write(f"{m.label},{m.degree},{_fmt(m.betweenness)},{_fmt(m.diversity)},"
                     f"{assignment.communities[m.label]}\n")

    with (out / "centroid_histogram.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("bin_lo,bin_hi,count\n")
        for lo, hi, count in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.counts):
            fh.write(f"{_fmt(lo)},{_fmt(hi)},{int(count)}\n")

    with (out / "pca_coordinates.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("label,pc1,pc2,community\n")
        for lab in final.nodes:
            pc1, pc2 = proj.coordinates[lab]
            fh.write(f"{lab},{_fmt(pc1)},{_fmt(pc2)},{assignment.communities[lab]}\n")

    # top communities by size keep distinct colors; the rest render gray
    sizes: dict[int, int] = {}
    for cid in assignment.communities.values():
        sizes[cid] = sizes.get(cid, 0) + 1
    ranked = sorted(sizes, key=lambda c: (-sizes[c], c))
    color_of = {cid: rank for rank, cid in enumerate(ranked)}
    scatter = render_scatter(
        "semantic map (2-D embedding projection, colored by community)",
        [(proj.coordinates[lab][0], proj.coordinates[lab][1],
          color_of[assignment.communities[lab]]) for lab in final.nodes])
    (out / "semantic_map.svg").write_text(scatter, encoding="utf-8")

    with (out / "bc_diversity.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("iteration,pearson_r,degenerate\n")
        for iteration, r, degenerate in bc_curve:
            fh.write(f"{iteration},{_fmt(r)},{int(degenerate)}\n")

    iters = [float(i) for i in trace.iterations]
    entropy_chart = render_chart([
        Panel("structural entropy (nats)",
              (Series("s_struct", iters, [s.s_struct for s in trace.samples]),)),
        Panel("semantic entropy (nats)",
              (Series("s_sem", iters, [s.s_sem for s in trace.samples]),)),
        Panel(f"rolling entropy correlation (window {xcorr.window})",
              (Series("pearson_r", [float(p.iteration) for p in xcorr.points],
                      [p.pearson_r for p in xcorr.points]),)),
        Panel("discovery parameter",
              (Series("d", iters, [s.d_param for s in trace.samples]),)),
    ])
    (out / "entropy_dynamics.svg").write_text(entropy_chart, encoding="utf-8")

    surprise_chart = render_chart([
        Panel("edge counts",
              (Series("total", iters, [float(n) for n in trace.n_edges]),
               Series("surprising", iters, [float(n) for n in trace.n_surprising]))),
        Panel(f"surprising fraction (threshold {opts['threshold']})",
              (Series("alpha", iters, trace.alphas),)),
        Panel("betweenness vs neighbor diversity",
              (Series("pearson_r", [float(i) for i, _, _ in bc_curve],
                      [r for _, r, _ in bc_curve]),)),
    ])
    (out / "surprise_dynamics.svg").write_text(surprise_chart, encoding="utf-8")
    return 0


_SIMULATE_KEYS = ("seed", "iterations", "nodes_per_iter", "edges_per_new_node",
                  "pref_weight", "sem_weight", "surprise_prob", "centroids",
                  "dim", "noise")


def cmd_simulate(opts: dict[str, Any]) -> int:
    cfg = _growth_config(opts)
    run = grow(cfg)
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    write_corpus(run, out)
    meta = _metadata(opts, _SIMULATE_KEYS, {})
    with (out / "manifest.txt").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        for key in _SIMULATE_KEYS:
            fh.write(f"{key} = {opts[key]}\n")
        fh.write(f"n_snapshots = {len(run.series)}\n")
        fh.write(f"final_nodes = {run.series.final.n_nodes}\n")
        fh.write(f"final_edges = {run.series.final.n_edges}\n")
        fh.write(f"surprise_links = {run.surprise_links}\n")
        fh.write(f"surprise_fallbacks = {run.surprise_fallbacks}\n")
    return 0


_SWEEP_KEYS = ("snapshots", "embeddings", "fallback_embeddings", "fallback_dim",
               "thresholds", "seed")


def cmd_sweep(opts: dict[str, Any]) -> int:
    if not opts["snapshots"]:
        raise ValueError("sweep requires --snapshots DIR")
    snap_dir = Path(opts["snapshots"])
    series = load_series(snap_dir)
    emb_path: Path | None = None
    if opts["embeddings"]:
        emb_path = Path(opts["embeddings"])
        embeddings = load_embeddings(emb_path)
    elif opts["fallback_embeddings"]:
        embeddings = fallback_table(series.all_labels(), dim=int(opts["fallback_dim"]),
                                    seed=int(opts["seed"]))
    else:
        raise ValueError("no embedding source: pass --embeddings FILE or "
                         "--fallback-embeddings")
    grid = [float(t) for t in str(opts["thresholds"]).split(",") if t.strip()]
    sweep = threshold_sweep(series, embeddings, grid)

    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    meta = _metadata(opts, _SWEEP_KEYS, _input_digests(snap_dir, emb_path))
    with (out / "sweep.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("iteration,threshold,alpha\n")
        for iteration in sweep.iterations:
            for threshold, alpha in zip(sweep.thresholds, sweep.alphas[iteration]):
                fh.write(f"{iteration},{_fmt(threshold)},{_fmt(alpha)}\n")
    return 0


_RL_KEYS = ("seed", "episodes", "steps", "lr", "lambda_d", "lambda_se", "lambda_alpha",
            "d_target", "alpha_target", "iterations", "nodes_per_iter",
            "edges_per_new_node", "pref_weight", "sem_weight", "surprise_prob",
            "centroids", "dim", "noise")


def cmd_rl_train(opts: dict[str, Any]) -> int:
    env_cfg = _growth_config(opts)
    reward_cfg = RewardConfig(
        lambda_d=float(opts["lambda_d"]),
        lambda_se=float(opts["lambda_se"]),
        lambda_alpha=float(opts["lambda_alpha"]),
        d_target=float(opts["d_target"]),
        alpha_target=float(opts["alpha_target"]),
    )
    theta, curve = train(env_cfg, reward_cfg, episodes=int(opts["episodes"]),
                         steps_per_episode=int(opts["steps"]), lr=float(opts["lr"]),
                         seed=int(opts["seed"]))
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    meta = _metadata(opts, _RL_KEYS, {})
    with (out / "rl_curve.csv").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("episode,mean_reward,alpha_end,d_end\n")
        for row in curve:
            fh.write(f"{row.episode},{_fmt(row.mean_reward)},{_fmt(row.alpha_end)},"
                     f"{_fmt(row.d_end)}\n")
    with (out / "policy.txt").open("w", encoding="utf-8") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write("features = norm_endpoint_degree,cosine,bridge_indicator,bias\n")
        fh.write("theta = " + ",".join(_fmt(float(x)) for x in theta.theta) + "\n")
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(prog="graphcrit",
                        description="Structural-semantic criticality analysis "
                                    "over evolving graph series")
    parser.add_argument("--version", action="version", version=f"graphcrit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--config", type=str, default=None,
                       help="flat key = value config file (flags override it)")

    def add_inputs(p: argparse.ArgumentParser) -> None:
        p.add_argument("--snapshots", type=str, default=None, help="snapshot directory")
        p.add_argument("--embeddings", type=str, default=None, help="embedding file")
        p.add_argument("--fallback-embeddings", dest="fallback_embeddings",
                       action="store_const", const=True, default=None,
                       help="derive deterministic embeddings from labels")
        p.add_argument("--fallback-dim", dest="fallback_dim", type=int, default=None)

    def add_growth(p: argparse.ArgumentParser) -> None:
        p.add_argument("--iterations", type=int, default=None)
        p.add_argument("--nodes-per-iter", dest="nodes_per_iter", type=int, default=None)
        p.add_argument("--edges-per-new-node", dest="edges_per_new_node", type=int,
                       default=None)
        p.add_argument("--pref-weight", dest="pref_weight", type=float, default=None)
        p.add_argument("--sem-weight", dest="sem_weight", type=float, default=None)
        p.add_argument("--surprise-prob", dest="surprise_prob", type=float, default=None)
        p.add_argument("--centroids", type=int, default=None)
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--noise", type=float, default=None)

    p_an = sub.add_parser("analyze", help="full analysis of a snapshot corpus")
    add_common(p_an)
    add_inputs(p_an)
    p_an.add_argument("--threshold", type=float, default=None,
                      help="surprising-edge cosine threshold")
    p_an.add_argument("--window", type=int, default=None)
    p_an.add_argument("--sustain", type=int, default=None)
    p_an.add_argument("--louvain-seed", dest="louvain_seed", type=int, default=None)
    p_an.add_argument("--louvain-resolution", dest="louvain_resolution", type=float,
                      default=None)
    p_an.add_argument("--histogram-bins", dest="histogram_bins", type=int, default=None)
    p_an.add_argument("--metrics-stride", dest="metrics_stride", type=int, default=None,
                      help="compute the centrality/diversity curve every Nth snapshot")

    p_sim = sub.add_parser("simulate", help="generate a synthetic snapshot corpus")
    add_common(p_sim)
    add_growth(p_sim)

    p_sw = sub.add_parser("sweep", help="surprise-threshold sensitivity sweep")
    add_common(p_sw)
    add_inputs(p_sw)
    p_sw.add_argument("--thresholds", type=str, default=None,
                      help="comma-separated cosine thresholds")

    p_rl = sub.add_parser("rl-train", help="train the discovery-maximizing edge policy")
    add_common(p_rl)
    add_growth(p_rl)
    p_rl.add_argument("--episodes", type=int, default=None)
    p_rl.add_argument("--steps", type=int, default=None)
    p_rl.add_argument("--lr", type=float, default=None)
    p_rl.add_argument("--lambda-d", dest="lambda_d", type=float, default=None)
    p_rl.add_argument("--lambda-se", dest="lambda_se", type=float, default=None)
    p_rl.add_argument("--lambda-alpha", dest="lambda_alpha", type=float, default=None)
    p_rl.add_argument("--d-target", dest="d_target", type=float, default=None)
    p_rl.add_argument("--alpha-target", dest="alpha_target", type=float, default=None)
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "rl-train": cmd_rl_train,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        opts = resolve_options(args)
        return _COMMANDS[args.command](opts)
    except SystemExit:
        raise
    except _USER_ERRORS as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}),
              file=sys.stderr)
        return 1
    except Exception as exc:  # internal invariant violation
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__,
                          "internal": True}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
