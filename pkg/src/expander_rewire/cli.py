"""Command-line front end: generate, rewire, metrics, info-bound.

All outputs are plain files (edge lists, CSV, JSON) so downstream harnesses
and plotting scripts can compose runs without importing the package. Exit
codes: 0 success, 2 usage error, 3 domain/capacity error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import curvature, graph, info_contraction, rewiring, spectral
from .errors import DomainError, GenerationError

THREADS_ENV_VAR = "EXPANDER_REWIRE_THREADS"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


def _fmt(x: float) -> str:
    return f"{x:.9g}"


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def _spec_from_args(args) -> graph.GeneratorSpec:
    return graph.GeneratorSpec(
        family=args.family.replace("-", "_"),
        n=args.n,
        degree=args.degree,
        clique_size=args.clique_size,
        num_cliques=args.num_cliques,
        seed=args.seed,
    )


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    g = graph.generate(spec)
    graph.write_edge_list(args.out, g, generator=spec.as_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# rewire
# ---------------------------------------------------------------------------

def _suffixed(path: str, seed: int) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}.s{seed}{p.suffix}"))


def _rewire_once(
    in_path: str,
    out_path: str,
    trace_path: str,
    meta_path: str,
    algo: str,
    iterations: int,
    tau: float | None,
    seed: int,
    metric_every: int,
    plot: bool,
) -> None:
    g, generator = graph.read_edge_list_meta(in_path)
    final, trace = rewiring.run(
        g,
        algo,
        iterations,
        tau=tau,
        seed=seed,
        metric_every=metric_every,
        generator=generator,
    )
    graph.write_edge_list(out_path, final, generator=generator)
    trace.write_csv(trace_path)
    trace.write_metadata(meta_path)
    if plot:
        _plot_trace(trace, str(Path(trace_path).with_suffix(".png")))


def _plot_trace(trace: rewiring.RewireTrace, png_path: str) -> None:
    # best effort only; never fail the run over a rendering problem
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        iters = [r.iteration for r in trace.records]
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.plot(iters, [r.norm_gap for r in trace.records], color="tab:blue",
                label="normalized gap")
        ax.set_xlabel("iteration")
        ax.set_ylabel("normalized gap", color="tab:blue")
        ax2 = ax.twinx()
        ax2.plot(iters, [r.triangles for r in trace.records], color="tab:orange",
                 label="triangles")
        ax2.set_ylabel("triangles", color="tab:orange")
        ax.set_title(f"{trace.algorithm} seed={trace.seed}")
        fig.tight_layout()
        fig.savefig(png_path, dpi=120)
        plt.close(fig)
    except Exception as exc:  # noqa: BLE001
        print(f"warning: plot skipped ({exc})", file=sys.stderr)


def _parse_seed_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"seed range must look like 'a..b', got {text!r}")
    return list(range(int(lo), int(hi) + 1))


def cmd_rewire(args) -> int:
    trace_path = args.trace or str(Path(args.out).with_suffix(".trace.csv"))
    meta_path = args.meta or trace_path + ".meta.json"
    common = dict(
        in_path=getattr(args, "in"),
        algo=args.algo,
        iterations=args.iters,
        tau=args.tau,
        metric_every=args.metric_every,
        plot=args.plot,
    )
    if args.seeds is None:
        _rewire_once(
            out_path=args.out, trace_path=trace_path, meta_path=meta_path,
            seed=args.seed, **common,
        )
        return EXIT_OK
    seeds = _parse_seed_range(args.seeds)
    workers = min(len(seeds), int(os.environ.get(THREADS_ENV_VAR, os.cpu_count() or 1)))
    jobs = []
    for s in seeds:
        trace_s = _suffixed(trace_path, s)
        meta_s = _suffixed(args.meta, s) if args.meta else trace_s + ".meta.json"
        jobs.append(dict(out_path=_suffixed(args.out, s), trace_path=trace_s,
                         meta_path=meta_s, seed=s, **common))
    if workers <= 1:
        for job in jobs:
            _rewire_once(**job)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_rewire_once, **job) for job in jobs]
            for fut in futures:
                fut.result()
    return EXIT_OK


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def cmd_metrics(args) -> int:
    g = graph.read_edge_list(getattr(args, "in"))
    rows: list[tuple[str, str, str]] = []
    if args.gap or args.norm_gap or args.expander_alpha is not None:
        report = spectral.spectrum(g)
        if args.gap:
            rows.append(("gap", "", _fmt(report.gap)))
        if args.norm_gap:
            rows.append(("norm_gap", "", _fmt(report.normalized_gap)))
        if args.expander_alpha is not None:
            flag = report.is_spectral_expander(args.expander_alpha)
            rows.append(("spectral_expander", _fmt(args.expander_alpha), str(int(flag))))
    if args.triangles:
        rows.append(("triangles", "", str(spectral.triangle_count(g))))
    if args.cheeger_exact:
        rows.append(("cheeger_exact", "", _fmt(float(spectral.cheeger_exact(g).exact))))
    if args.cheeger_bounds:
        rep = spectral.cheeger_bounds(g)
        rows.append(("cheeger_lower", "", _fmt(rep.spectral_lower)))
        rows.append(("cheeger_upper", "", _fmt(rep.spectral_upper)))
    if args.effective_resistance:
        for u, v in g.edges():
            rows.append(
                ("effective_resistance", f"{u}-{v}",
                 _fmt(spectral.effective_resistance(g, u, v)))
            )
    if args.curvature:
        for (u, v), kappa in sorted(curvature.edge_curvature_map(g).items()):
            rows.append(("curvature", f"{u}-{v}", _fmt(kappa)))
    if not rows:
        print("no metrics requested; see --help", file=sys.stderr)
        return EXIT_USAGE
    text = "metric,key,value\n" + "".join(f"{a},{b},{c}\n" for a, b, c in rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# info-bound
# ---------------------------------------------------------------------------

def cmd_info_bound(args) -> int:
    if args.circuit is None and (args.fanin is None or args.distance is None):
        print("info-bound needs either --circuit or both --fanin and --distance",
              file=sys.stderr)
        return EXIT_USAGE
    eta = info_contraction.bsc_contraction(args.delta)
    if args.circuit is None:
        bound = info_contraction.es_bound(args.delta, args.fanin, args.distance)
        text = (
            f"eta {_fmt(eta)}\n"
            f"bound_bits {_fmt(bound.raw_bits)}\n"
            f"bound_clamped_bits {_fmt(bound.clamped_bits)}\n"
        )
    else:
        circuit = info_contraction.load_circuit(args.circuit)
        lines = ["delta,k,d,eta,bound_bits,exact_mi_bits"]
        for i in range(circuit.n_inputs):
            mi, bound = info_contraction.simulate_tree_circuit(circuit, args.delta, i)
            d = circuit.input_distance(i)
            d_text = str(int(d)) if d != math.inf else "inf"
            lines.append(
                f"{_fmt(args.delta)},{circuit.fanin_bound},{d_text},"
                f"{_fmt(eta)},{_fmt(bound)},{_fmt(mi)}"
            )
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expander-rewire",
        description="Rewire bottlenecked graphs toward expanders and measure them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a synthetic graph as an edge list")
    p_gen.add_argument("--family", required=True,
                       choices=[f.replace("_", "-") for f in graph.FAMILIES])
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--degree", type=int)
    p_gen.add_argument("--clique-size", type=int)
    p_gen.add_argument("--num-cliques", type=int)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_rw = sub.add_parser("rewire", help="run a rewiring algorithm over an edge list")
    p_rw.add_argument("--algo", required=True, choices=rewiring.ALGORITHMS)
    p_rw.add_argument("--iters", type=int, required=True)
    p_rw.add_argument("--tau", type=float, default=rewiring.DEFAULT_TAU,
                      help="inverse temperature for grlef (default 5)")
    p_rw.add_argument("--seed", type=int, default=0)
    p_rw.add_argument("--seeds", help="inclusive range 'a..b' run in parallel, "
                      "outputs suffixed .s<seed>")
    p_rw.add_argument("--in", required=True)
    p_rw.add_argument("--out", required=True)
    p_rw.add_argument("--trace", help="trace CSV path (default: <out>.trace.csv)")
    p_rw.add_argument("--meta", help="metadata JSON path (default: <trace>.meta.json)")
    p_rw.add_argument("--metric-every", type=int, default=1)
    p_rw.add_argument("--plot", action="store_true",
                      help="best-effort PNG of the gap/triangle trace")
    p_rw.set_defaults(func=cmd_rewire)

    p_met = sub.add_parser("metrics", help="compute metrics for an edge list")
    p_met.add_argument("--in", required=True)
    p_met.add_argument("--out")
    p_met.add_argument("--gap", action="store_true")
    p_met.add_argument("--norm-gap", action="store_true")
    p_met.add_argument("--triangles", action="store_true")
    p_met.add_argument("--cheeger-exact", action="store_true")
    p_met.add_argument("--cheeger-bounds", action="store_true")
    p_met.add_argument("--effective-resistance", action="store_true")
    p_met.add_argument("--curvature", action="store_true")
    p_met.add_argument("--expander-alpha", type=float,
                       help="also report the spectral-expander test at this alpha")
    p_met.set_defaults(func=cmd_metrics)

    p_ib = sub.add_parser("info-bound", help="information-decay bounds and exact MI")
    p_ib.add_argument("--delta", type=float, required=True)
    p_ib.add_argument("--fanin", type=int)
    p_ib.add_argument("--distance", type=int)
    p_ib.add_argument("--circuit", help="circuit JSON; emits one row per input")
    p_ib.add_argument("--out")
    p_ib.set_defaults(func=cmd_info_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
