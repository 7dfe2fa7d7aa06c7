"""Exact 1-Wasserstein transport on graphs and Ollivier-Ricci curvature.

The random-walk channel sends each node to the uniform distribution over its
neighbors (no laziness). Curvature of an edge is 1 minus the transport cost
between the endpoint walk measures; the graph-level Kantorovich norm is the
worst transport-to-distance ratio over all node pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog

from .errors import CapacityError, DomainError
from .graph import Graph, bfs_distances, is_connected

KANTOROVICH_MAX_NODES = 60
_MASS_TOLERANCE = 1e-12
_LP_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


@dataclass(frozen=True)
class NodeDistribution:
    """Probability masses on distinct nodes, summing to one."""

    support: tuple[tuple[int, float], ...]

    def __post_init__(self):
        nodes = [node for node, _ in self.support]
        if len(set(nodes)) != len(nodes):
            raise ValueError("support nodes must be distinct")
        if any(mass <= 0 for _, mass in self.support):
            raise ValueError("masses must be positive")
        total = sum(mass for _, mass in self.support)
        if abs(total - 1.0) > _MASS_TOLERANCE:
            raise ValueError(f"masses must sum to 1, got {total}")

    @classmethod
    def point(cls, node: int) -> "NodeDistribution":
        return cls(((node, 1.0),))

    @classmethod
    def uniform(cls, nodes) -> "NodeDistribution":
        nodes = list(nodes)
        return cls(tuple((node, 1.0 / len(nodes)) for node in nodes))

    @classmethod
    def random_walk_step(cls, g: Graph, x: int) -> "NodeDistribution":
        """Uniform measure on N(x): one step of the simple random walk."""
        nbrs = g.neighbors(x)
        if not nbrs:
            raise DomainError(f"node {x} is isolated; no random-walk step")
        return cls.uniform(nbrs)

    def nodes(self) -> list[int]:
        return [node for node, _ in self.support]

    def masses(self) -> list[float]:
        return [mass for _, mass in self.support]


def _support_costs(g: Graph, mu_nodes, nu_nodes) -> np.ndarray:
    cost = np.empty((len(mu_nodes), len(nu_nodes)))
    for i, x in enumerate(mu_nodes):
        row = bfs_distances(g, x)
        for j, y in enumerate(nu_nodes):
            d = row[y]
            if d == math.inf:
                raise DomainError(
                    f"supports span different components: no path {x} -> {y}"
                )
            cost[i, j] = d
    return cost


def wasserstein1(g: Graph, mu: NodeDistribution, nu: NodeDistribution) -> float:
    """Exact optimal-transport cost between mu and nu under hop distance.

    Solves the transport linear program with a vertex method; supports here
    are neighbor-scale, so problem sizes stay tiny.
    """
    for node in mu.nodes() + nu.nodes():
        g._check_node(node)
    cost = _support_costs(g, mu.nodes(), nu.nodes())
    k, l = cost.shape
    a_eq = np.zeros((k + l, k * l))
    for i in range(k):
        a_eq[i, i * l:(i + 1) * l] = 1.0
    for j in range(l):
        a_eq[k + j, j::l] = 1.0
    b_eq = np.array(mu.masses() + nu.masses())
    res = linprog(
        cost.ravel(), A_eq=a_eq, b_eq=b_eq, bounds=(0, None),
        method="highs", options=_LP_OPTIONS,
    )
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return max(float(res.fun), 0.0)


def _w1_uniform(cost: np.ndarray) -> float:
    """Exact W1 between uniform measures, given the support cost matrix.

    Equal-mass atoms make the transport polytope integral, so splitting each
    side into lcm-many atoms reduces the problem to a min-cost assignment.
    """
    k, l = cost.shape
    common = math.lcm(k, l)
    expanded = np.repeat(np.repeat(cost, common // k, axis=0), common // l, axis=1)
    rows, cols = linear_sum_assignment(expanded)
    return float(expanded[rows, cols].sum()) / common


def ollivier_ricci_edge(g: Graph, u: int, v: int) -> float:
    """1 - W1 between the endpoint random-walk measures of an edge."""
    if not g.has_edge(u, v):
        raise DomainError(f"({u},{v}) is not an edge")
    nu_nodes = g.neighbors(v)
    cost = np.empty((g.degree(u), g.degree(v)))
    for i, x in enumerate(g.neighbors(u)):
        row = bfs_distances(g, x)
        cost[i, :] = [row[y] for y in nu_nodes]
    return 1.0 - _w1_uniform(cost)


def edge_curvature_map(g: Graph, _dist: list[list[float]] | None = None) -> dict[tuple[int, int], float]:
    """Ollivier-Ricci curvature of every edge, keyed by (u, v) with u < v."""
    dist = _dist if _dist is not None else [bfs_distances(g, s) for s in range(g.n)]
    out = {}
    for u, v in g.edges():
        su, sv = g.neighbors(u), g.neighbors(v)
        cost = np.array([[dist[x][y] for y in sv] for x in su], dtype=float)
        out[(u, v)] = 1.0 - _w1_uniform(cost)
    return out


class KantorovichResult(NamedTuple):
    kantorovich_norm: float
    graph_curvature: float


def kantorovich_norm(g: Graph) -> KantorovichResult:
    """Worst-case W1(K(x,.), K(x',.)) / d(x, x') over distinct node pairs.

    Also reports the graph curvature 1 - tau. Quadratically many transport
    solves; capped at n <= 60.
    """
    if g.n > KANTOROVICH_MAX_NODES:
        raise CapacityError(
            f"kantorovich_norm is capped at n <= {KANTOROVICH_MAX_NODES} (got {g.n})"
        )
    if g.n < 2:
        raise DomainError("kantorovich_norm needs at least 2 nodes")
    if not is_connected(g):
        raise DomainError("kantorovich_norm requires a connected graph")
    dist = [bfs_distances(g, s) for s in range(g.n)]
    tau = 0.0
    for x in range(g.n):
        sx = g.neighbors(x)
        for y in range(x + 1, g.n):
            sy = g.neighbors(y)
            cost = np.array([[dist[a][b] for b in sy] for a in sx], dtype=float)
            tau = max(tau, _w1_uniform(cost) / dist[x][y])
    return KantorovichResult(tau, 1.0 - tau)


@dataclass(frozen=True)
class CurvatureReport:
    """Per-edge curvatures plus the graph-level contraction summary."""

    per_edge: dict[tuple[int, int], float]
    kantorovich_norm: float
    graph_curvature: float


def curvature_report(g: Graph) -> CurvatureReport:
    tau, kappa = kantorovich_norm(g)
    return CurvatureReport(
        per_edge=edge_curvature_map(g),
        kantorovich_norm=tau,
        graph_curvature=kappa,
    )
