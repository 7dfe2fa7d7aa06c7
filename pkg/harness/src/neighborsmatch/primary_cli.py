"""Locate and drive the expander-rewire CLI.

The harness talks to the rewiring toolkit exclusively through its command
line and file formats; nothing here imports it as a library.
"""

from __future__ import annotations

import json
import os
import shlex
import shutil
import subprocess
import sys
from pathlib import Path

CLI_ENV_VAR = "EXPANDER_REWIRE_CLI"


class CliNotFoundError(RuntimeError):
    """The expander-rewire command line is not available."""


def find_cli() -> list[str]:
    """Resolve the CLI invocation, honoring the EXPANDER_REWIRE_CLI override."""
    override = os.environ.get(CLI_ENV_VAR)
    if override:
        return shlex.split(override)
    exe = shutil.which("expander-rewire")
    if exe:
        return [exe]
    probe = [sys.executable, "-m", "expander_rewire.cli"]
    try:
        result = subprocess.run(
            probe + ["--help"], capture_output=True, text=True, timeout=60
        )
    except OSError as exc:
        raise CliNotFoundError(f"cannot execute {probe}: {exc}") from exc
    if result.returncode == 0:
        return probe
    raise CliNotFoundError(
        "expander-rewire CLI not found on PATH and the module fallback failed; "
        f"set {CLI_ENV_VAR} to the command to run"
    )


def _run(argv: list[str]) -> None:
    result = subprocess.run(argv, capture_output=True, text=True)
    if result.returncode != 0:
        raise RuntimeError(
            f"primary CLI failed (exit {result.returncode}): {' '.join(argv)}\n"
            f"{result.stderr.strip()}"
        )


def generate_path_of_cliques(
    out: Path | str, clique_size: int = 10, num_cliques: int = 3,
    cli: list[str] | None = None,
) -> Path:
    cli = cli or find_cli()
    out = Path(out)
    _run(cli + [
        "generate", "--family", "path-of-cliques",
        "--clique-size", str(clique_size), "--num-cliques", str(num_cliques),
        "--out", str(out),
    ])
    return out


def rewire(
    in_path: Path | str, out_path: Path | str, iterations: int, seed: int,
    tau: float = 5.0, metric_every: int = 50, cli: list[str] | None = None,
) -> tuple[Path, float]:
    """Rewire with grlef and return (output path, final normalized gap).

    The gap comes from the run's metadata JSON sidecar.
    """
    cli = cli or find_cli()
    out_path = Path(out_path)
    trace = out_path.with_suffix(".trace.csv")
    meta = out_path.with_suffix(".meta.json")
    _run(cli + [
        "rewire", "--algo", "grlef", "--iters", str(iterations),
        "--tau", str(tau), "--seed", str(seed),
        "--metric-every", str(metric_every),
        "--in", str(in_path), "--out", str(out_path),
        "--trace", str(trace), "--meta", str(meta),
    ])
    metadata = json.loads(meta.read_text())
    return out_path, float(metadata["final"]["norm_gap"])
