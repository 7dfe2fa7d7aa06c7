"""Accuracy-vs-rewiring sweep driven through the primary CLI.

For each point of the iteration grid and each seed, the base path-of-cliques
graph is rewired (grlef, that seed), a fresh dataset is built on the rewired
graph, and the network is trained; the row aggregates the final normalized
gap and training accuracy over seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import primary_cli
from .dataset import build_dataset
from .train import DEFAULT_EPOCHS, DEFAULT_LAYERS, DEFAULT_WIDTH, train_and_eval

CSV_HEADER = "iters,norm_gap,mean_acc,std_acc"


@dataclass(frozen=True)
class SweepRow:
    iters: int
    norm_gap: float
    mean_acc: float
    std_acc: float

    def as_csv(self) -> str:
        return (
            f"{self.iters},{self.norm_gap:.9g},"
            f"{self.mean_acc:.9g},{self.std_acc:.9g}"
        )


def sweep(
    iteration_grid,
    seeds,
    *,
    workdir: Path | str | None = None,
    count: int = 10_000,
    epochs: int = DEFAULT_EPOCHS,
    layers: int = DEFAULT_LAYERS,
    width: int = DEFAULT_WIDTH,
    tau: float = 5.0,
    clique_size: int = 10,
    num_cliques: int = 3,
    verbose: bool = False,
) -> list[SweepRow]:
    cli = primary_cli.find_cli()
    rows: list[SweepRow] = []
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(workdir) if workdir is not None else Path(tmp)
        root.mkdir(parents=True, exist_ok=True)
        base = primary_cli.generate_path_of_cliques(
            root / "base.el", clique_size, num_cliques, cli=cli
        )
        for iters in iteration_grid:
            gaps, accs = [], []
            for seed in seeds:
                rewired, gap = primary_cli.rewire(
                    base, root / f"rewired_{iters}_s{seed}.el",
                    iterations=iters, seed=seed, tau=tau, cli=cli,
                )
                ds = build_dataset(rewired, count=count, seed=seed)
                result = train_and_eval(
                    ds, layers=layers, width=width, epochs=epochs, seed=seed
                )
                gaps.append(gap)
                accs.append(result.accuracy)
                if verbose:
                    print(
                        f"iters={iters} seed={seed}: gap={gap:.4f} "
                        f"acc={result.accuracy:.3f}",
                        flush=True,
                    )
            rows.append(SweepRow(
                iters=int(iters),
                norm_gap=float(np.mean(gaps)),
                mean_acc=float(np.mean(accs)),
                std_acc=float(np.std(accs)),
            ))
    return rows


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.as_csv() for r in rows]) + "\n"


def write_sweep_csv(target: Path | str, rows) -> None:
    Path(target).write_text(rows_to_csv(rows))


def entry(argv=None) -> None:
    parser = argparse.ArgumentParser(
        prog="neighborsmatch-sweep", description=__doc__,
    )
    parser.add_argument("--grid", type=int, nargs="+",
                        default=[0, 50, 100, 150, 200])
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--count", type=int, default=10_000)
    parser.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS)
    parser.add_argument("--layers", type=int, default=DEFAULT_LAYERS)
    parser.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    parser.add_argument("--tau", type=float, default=5.0)
    parser.add_argument("--out", default="sweep.csv")
    parser.add_argument("--meta", help="optional JSON with run settings")
    parser.add_argument("--workdir", help="keep intermediate files here")
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args(argv)
    try:
        rows = sweep(
            args.grid, args.seeds, workdir=args.workdir, count=args.count,
            epochs=args.epochs, layers=args.layers, width=args.width,
            tau=args.tau, verbose=not args.quiet,
        )
    except primary_cli.CliNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(3)
    write_sweep_csv(args.out, rows)
    if args.meta:
        Path(args.meta).write_text(json.dumps({
            "grid": args.grid, "seeds": args.seeds, "count": args.count,
            "epochs": args.epochs, "layers": args.layers, "width": args.width,
            "tau": args.tau, "optimizer": "adam",
        }, indent=2) + "\n")
    print(rows_to_csv(rows), end="")


if __name__ == "__main__":
    entry()
