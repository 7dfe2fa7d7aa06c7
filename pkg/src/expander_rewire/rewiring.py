"""Degree-preserving local edge flips, a greedy variant, and a curvature baseline.

All three step functions mutate the given graph in place and return it with a
StepOutcome; a run owns its working copy exclusively. Every randomized choice
goes through the supplied random.Random stream in a documented order, so a
seed pins the whole trajectory.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from pathlib import Path

from .curvature import edge_curvature_map
from .errors import DomainError
from .graph import Graph, is_connected
from .spectral import spectrum, triangle_count

ALGORITHMS = ("rlef", "grlef", "sdrf")

ABORT_NEIGHBOR_OVERLAP = "neighbor_overlap"
ABORT_NO_VALID_I = "no_valid_i"
ABORT_NO_VALID_J = "no_valid_j"
ABORT_SUBSET_CONDITION = "subset_condition"

DEFAULT_TAU = 5.0


@dataclass(frozen=True)
class StepOutcome:
    """Result of one rewiring step.

    Applied flips list the removed and added edges; aborted steps leave the
    graph untouched and carry a reason. hub_edge is the sampled (or selected)
    focus edge either way.
    """

    status: str  # "applied" | "aborted"
    hub_edge: tuple[int, int]
    abort_reason: str | None = None
    removed_edges: tuple[tuple[int, int], ...] = ()
    added_edges: tuple[tuple[int, int], ...] = ()

    @property
    def applied(self) -> bool:
        return self.status == "applied"


def _aborted(hub: tuple[int, int], reason: str) -> StepOutcome:
    return StepOutcome(status="aborted", hub_edge=hub, abort_reason=reason)


def _sample_stub(g: Graph, rng: random.Random) -> tuple[int, int]:
    """Uniform directed edge (u, v): equivalent to a uniform edge plus a coin."""
    cumdeg = list(accumulate(len(g._adj[u]) for u in range(g.n)))
    t = rng.randrange(2 * g.edge_count)
    u = bisect_right(cumdeg, t)
    v = g._adj[u][t - (cumdeg[u - 1] if u else 0)]
    return u, v


def _apply_flip(g: Graph, i: int, u: int, v: int, j: int) -> StepOutcome:
    g.remove_edge(i, u)
    g.remove_edge(j, v)
    g.add_edge(i, v)
    g.add_edge(j, u)
    return StepOutcome(
        status="applied",
        hub_edge=(u, v),
        removed_edges=((i, u), (j, v)),
        added_edges=((i, v), (j, u)),
    )


def rlef_step(g: Graph, rng: random.Random) -> tuple[Graph, StepOutcome]:
    """One random local edge flip around a uniformly sampled hub edge.

    Draw order: directed hub edge (u, v), then an index into N(u) for i, then
    an index into the valid-j list. The flip removes (i,u),(j,v) and adds
    (i,v),(j,u); it preserves every degree, simplicity, and connectivity
    (the hub edge itself is never removed). When no valid j exists the step
    aborts instead of resampling, which leaves the conditional distribution
    over valid j unchanged.
    """
    if g.edge_count < 1:
        raise DomainError("rlef_step needs at least one edge")
    u, v = _sample_stub(g, rng)
    nbrs_u = g.neighbors(u)
    i = nbrs_u[rng.randrange(len(nbrs_u))]
    if i == v or g.has_edge(i, v):
        return g, _aborted((u, v), ABORT_NEIGHBOR_OVERLAP)
    set_u = g.neighbor_set(u)
    valid_j = [w for w in g.neighbors(v) if w not in set_u and w != u]
    if not valid_j:
        return g, _aborted((u, v), ABORT_NO_VALID_J)
    j = valid_j[rng.randrange(len(valid_j))]
    return g, _apply_flip(g, i, u, v, j)


def _softmax_sample(weights: list[float], tau: float, rng: random.Random) -> int:
    top = max(weights)
    expw = [math.exp(tau * (w - top)) for w in weights]
    cum = list(accumulate(expw))
    return bisect_right(cum, rng.random() * cum[-1])


def _argmin_tiebreak(candidates, key, rng: random.Random) -> int:
    scored = [(key(c), c) for c in candidates]
    best = min(s for s, _ in scored)
    tied = [c for s, c in scored if s == best]
    return tied[rng.randrange(len(tied))]


def grlef_step(
    g: Graph, tau: float, rng: random.Random
) -> tuple[Graph, StepOutcome]:
    """Greedy flip: hub sampled by softmax of inverse-triangle-count weights.

    Each edge gets weight 2/(2 + #common neighbors), the resistance proxy, and
    the hub is drawn with probability proportional to exp(tau * weight). The
    endpoints i and j are then chosen to minimize the net triangle change,
    ties broken uniformly. Draw order: hub edge, tie-break for i, tie-break
    for j. Aborts when either corrected candidate set is empty.
    """
    if tau <= 0:
        raise ValueError(f"inverse temperature must be positive, got {tau}")
    if g.edge_count < 1:
        raise DomainError("grlef_step needs at least one edge")
    sets = g._sets
    edges = []
    weights = []
    for u in range(g.n):
        su = sets[u]
        for v in g._adj[u]:
            if v > u:
                edges.append((u, v))
                weights.append(2.0 / (2.0 + len(su & sets[v])))
    u, v = edges[_softmax_sample(weights, tau, rng)]
    set_u, set_v = sets[u], sets[v]
    cand_i = [w for w in g.neighbors(u) if w not in set_v and w != v]
    cand_j = [w for w in g.neighbors(v) if w not in set_u and w != u]
    if not cand_i or not cand_j:
        return g, _aborted((u, v), ABORT_SUBSET_CONDITION)
    i = _argmin_tiebreak(
        cand_i, lambda w: len(sets[w] & set_v) - len(sets[w] & set_u), rng
    )
    j = _argmin_tiebreak(
        cand_j, lambda w: len(sets[w] & set_u) - len(sets[w] & set_v), rng
    )
    return g, _apply_flip(g, i, u, v, j)


def _choice_sorted(items, rng: random.Random):
    items = sorted(items)
    return items[rng.randrange(len(items))]


def sdrf_step(g: Graph, rng: random.Random) -> tuple[Graph, StepOutcome]:
    """Curvature baseline: support the most negative edge, drop the most positive.

    Add phase: around the minimum-curvature edge (u, v), insert a missing edge
    (i, j) with i in N(u), j in N(v). Inserting such an edge never changes the
    common-neighbor count of (u, v) itself, so all candidates tie and the
    choice is uniform. Remove phase: recompute curvature and delete the
    maximum-curvature edge. Edge count is preserved; degrees and connectivity
    are not guaranteed. If the add phase has no candidate the whole step
    aborts so the edge count stays balanced.
    """
    if g.edge_count < 1:
        raise DomainError("sdrf_step needs at least one edge")
    curv = edge_curvature_map(g)
    low = min(curv.values())
    u, v = _choice_sorted([e for e, c in curv.items() if c == low], rng)
    candidates = set()
    for i in g.neighbors(u):
        if i == v:
            continue
        for j in g.neighbors(v):
            if j == u or j == i or g.has_edge(i, j):
                continue
            candidates.add((i, j) if i < j else (j, i))
    if not candidates:
        return g, _aborted((u, v), ABORT_NO_VALID_I)
    i, j = _choice_sorted(candidates, rng)
    g.add_edge(i, j)
    curv = edge_curvature_map(g)
    high = max(curv.values())
    p, q = _choice_sorted([e for e, c in curv.items() if c == high], rng)
    g.remove_edge(p, q)
    return g, StepOutcome(
        status="applied",
        hub_edge=(u, v),
        removed_edges=((p, q),),
        added_edges=((i, j),),
    )


# ---------------------------------------------------------------------------
# Run driver and trace recording
# ---------------------------------------------------------------------------

NORMALIZATION_CONVENTION = (
    "1 - mu2/d for regular snapshots; lambda2 of I - D^(-1/2) A D^(-1/2) otherwise; "
    "0 when disconnected"
)


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    m: int
    connected: bool
    norm_gap: float
    triangles: int
    aborted: bool


@dataclass
class RewireTrace:
    """Metric snapshots along one rewiring run, plus reproducibility metadata."""

    algorithm: str
    seed: int
    tau: float | None
    iterations: int
    metric_every: int
    normalization: str = NORMALIZATION_CONVENTION
    generator: dict | None = None
    records: list[TraceRecord] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["iter,m,connected,norm_gap,triangles,aborted"]
        for r in self.records:
            lines.append(
                f"{r.iteration},{r.m},{int(r.connected)},{r.norm_gap:.9g},"
                f"{r.triangles},{int(r.aborted)}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, target) -> None:
        Path(target).write_text(self.to_csv())

    def metadata_dict(self) -> dict:
        final = self.records[-1]
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "tau": self.tau,
            "iterations": self.iterations,
            "metric_every": self.metric_every,
            "normalization": self.normalization,
            "generator": self.generator,
            "final": {
                "iteration": final.iteration,
                "m": final.m,
                "connected": final.connected,
                "norm_gap": final.norm_gap,
                "triangles": final.triangles,
            },
        }

    def write_metadata(self, target) -> None:
        import json

        Path(target).write_text(
            json.dumps(self.metadata_dict(), indent=2, sort_keys=True) + "\n"
        )


def _snapshot(g: Graph, iteration: int, aborted: bool) -> TraceRecord:
    connected = is_connected(g)
    if connected and g.n >= 2:
        gap = spectrum(g).normalized_gap
    else:
        gap = 0.0
    return TraceRecord(
        iteration=iteration,
        m=g.edge_count,
        connected=connected,
        norm_gap=gap,
        triangles=triangle_count(g),
        aborted=aborted,
    )


def run(
    g: Graph,
    algo: str,
    iterations: int,
    *,
    tau: float | None = None,
    seed: int = 0,
    metric_every: int = 1,
    generator: dict | None = None,
) -> tuple[Graph, RewireTrace]:
    """Apply `iterations` steps of the chosen algorithm, recording metrics.

    Metrics are recorded on the initial graph, every metric_every-th
    iteration, and on the final one. The input graph is left untouched; the
    returned graph is a rewired copy. A disconnected snapshot (possible under
    sdrf only) records a normalized gap of 0 and keeps going.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    if iterations < 0:
        raise ValueError("iterations must be nonnegative")
    if metric_every < 1:
        raise ValueError("metric_every must be positive")
    if algo in ("rlef", "grlef") and not is_connected(g):
        raise DomainError(f"{algo} requires a connected input graph")
    if algo == "grlef":
        tau = DEFAULT_TAU if tau is None else tau
        if tau <= 0:
            raise ValueError(f"inverse temperature must be positive, got {tau}")
    work = g.copy()
    rng = random.Random(seed)
    trace = RewireTrace(
        algorithm=algo,
        seed=seed,
        tau=tau if algo == "grlef" else None,
        iterations=iterations,
        metric_every=metric_every,
        generator=generator,
    )
    trace.records.append(_snapshot(work, 0, aborted=False))
    for it in range(1, iterations + 1):
        if algo == "rlef":
            work, outcome = rlef_step(work, rng)
        elif algo == "grlef":
            work, outcome = grlef_step(work, tau, rng)
        else:
            work, outcome = sdrf_step(work, rng)
        if it % metric_every == 0 or it == iterations:
            trace.records.append(_snapshot(work, it, aborted=not outcome.applied))
    return work, trace
