"""Spectral gap, Cheeger constant, triangle counts, effective resistance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from weakref import WeakKeyDictionary

import numpy as np

from .errors import CapacityError, DomainError
from .graph import Graph, bfs_distances, is_connected

CHEEGER_EXACT_MAX_NODES = 20


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def regular_degree(g: Graph) -> int | None:
    """The common degree if g is regular, else None."""
    degs = g.degrees()
    if g.n == 0:
        return None
    d = degs[0]
    return d if all(x == d for x in degs) else None


@dataclass(frozen=True)
class SpectrumReport:
    """Adjacency spectrum summary.

    eigenvalues are sorted descending; gap is mu1 - mu2; normalized_gap is
    1 - mu2/d for regular graphs and otherwise the second-smallest eigenvalue
    of the random-walk-normalized Laplacian (the two coincide on regular
    graphs); mu_abs is max(|mu2|, |mu_n|).
    """

    eigenvalues: tuple[float, ...]
    gap: float
    normalized_gap: float
    mu_abs: float
    regular_degree: int | None

    def is_spectral_expander(self, alpha: float) -> bool:
        """mu_abs/d <= alpha; only meaningful for regular graphs."""
        if self.regular_degree is None:
            raise DomainError("spectral-expander test is defined for regular graphs")
        return self.mu_abs / self.regular_degree <= alpha


def spectrum(g: Graph) -> SpectrumReport:
    """Dense symmetric eigendecomposition of the adjacency matrix.

    Desk scale (n up to ~2000). Raises DomainError on disconnected input,
    where a normalized gap of 0 would be misleading.
    """
    if g.n < 2:
        raise DomainError("spectrum needs at least 2 nodes")
    if not is_connected(g):
        raise DomainError("spectrum requires a connected graph")
    a = adjacency_matrix(g)
    mu = np.linalg.eigvalsh(a)[::-1]
    d = regular_degree(g)
    if d is not None:
        normalized = 1.0 - mu[1] / d
    else:
        inv_sqrt = 1.0 / np.sqrt(np.array(g.degrees(), dtype=float))
        sym = a * inv_sqrt[:, None] * inv_sqrt[None, :]
        lam = np.linalg.eigvalsh(np.eye(g.n) - sym)
        normalized = float(lam[1])
    return SpectrumReport(
        eigenvalues=tuple(float(x) for x in mu),
        gap=float(mu[0] - mu[1]),
        normalized_gap=float(normalized),
        mu_abs=float(max(abs(mu[1]), abs(mu[-1]))),
        regular_degree=d,
    )


def normalized_gap(g: Graph) -> float:
    return spectrum(g).normalized_gap


@dataclass(frozen=True)
class CheegerReport:
    """Exact isoperimetric ratio and/or its spectral sandwich bounds."""

    exact: Fraction | None = None
    witness: frozenset[int] | None = None
    spectral_lower: float | None = None
    spectral_upper: float | None = None


def cheeger_exact(g: Graph) -> CheegerReport:
    """Minimum of |boundary(S)|/|S| over subsets with |S| <= n/2, by enumeration.

    Exponential in n; capped at n <= 20. The witness minimizer is returned.
    """
    if not is_connected(g):
        raise DomainError("cheeger_exact requires a connected graph")
    if g.n < 2:
        raise DomainError("cheeger_exact needs at least 2 nodes")
    if g.n > CHEEGER_EXACT_MAX_NODES:
        raise CapacityError(
            f"exact Cheeger enumeration is capped at n <= {CHEEGER_EXACT_MAX_NODES} "
            f"(got n = {g.n}); use cheeger_bounds for larger regular graphs"
        )
    masks = [0] * g.n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    best: Fraction | None = None
    best_set: tuple[int, ...] | None = None
    nodes = range(g.n)
    for size in range(1, g.n // 2 + 1):
        for combo in combinations(nodes, size):
            s_mask = 0
            for u in combo:
                s_mask |= 1 << u
            boundary = 0
            for u in combo:
                boundary += (masks[u] & ~s_mask).bit_count()
            ratio = Fraction(boundary, size)
            if best is None or ratio < best:
                best = ratio
                best_set = combo
    assert best is not None and best_set is not None
    return CheegerReport(exact=best, witness=frozenset(best_set))


def cheeger_bounds(g: Graph) -> CheegerReport:
    """Spectral sandwich (d - mu2)/2 <= h(G) <= sqrt(2d(d - mu2)), regular only."""
    d = regular_degree(g)
    if d is None:
        raise DomainError("cheeger_bounds is stated for regular graphs only")
    mu2 = spectrum(g).eigenvalues[1]
    return CheegerReport(
        spectral_lower=(d - mu2) / 2.0,
        spectral_upper=math.sqrt(2.0 * d * (d - mu2)),
    )


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """|N(u) & N(v)|; equals the per-edge triangle count when (u,v) is an edge."""
    if u == v:
        raise DomainError("common_neighbors needs two distinct nodes")
    return len(g.neighbor_set(u) & g.neighbor_set(v))


def triangle_count(g: Graph) -> int:
    """Number of triangles, via summing per-edge common-neighbor counts."""
    total = 0
    sets = [g.neighbor_set(u) for u in range(g.n)]
    for u, v in g.edges():
        total += len(sets[u] & sets[v])
    # each triangle is counted once per edge
    return total // 3


_PINV_CACHE: "WeakKeyDictionary[Graph, tuple[int, np.ndarray]]" = WeakKeyDictionary()


def laplacian_pinv(g: Graph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the Laplacian, cached per snapshot.

    The cache is keyed on the graph's mutation counter, so any rewiring step
    invalidates it.
    """
    hit = _PINV_CACHE.get(g)
    if hit is not None and hit[0] == g.version:
        return hit[1]
    pinv = np.linalg.pinv(laplacian_matrix(g), hermitian=True)
    _PINV_CACHE[g] = (g.version, pinv)
    return pinv


def effective_resistance(g: Graph, u: int, v: int) -> float:
    """Resistance between u and v with unit resistors on edges.

    Computed as (chi_u - chi_v)^T L^+ (chi_u - chi_v); math.inf when u and v
    lie in different components.
    """
    if u == v:
        raise DomainError("effective_resistance needs two distinct nodes")
    g._check_node(u)
    g._check_node(v)
    if not g.has_edge(u, v) and bfs_distances(g, u)[v] == math.inf:
        return math.inf
    pinv = laplacian_pinv(g)
    value = pinv[u, u] - 2.0 * pinv[u, v] + pinv[v, v]
    return max(float(value), 0.0)


def resistance_triangle_bound(g: Graph, u: int, v: int) -> float:
    """Upper bound 2/(2 + common_neighbors(u, v)) for the resistance of an edge."""
    return 2.0 / (2.0 + common_neighbors(g, u, v))
