"""Simple undirected graphs: representation, traversal, generators, file I/O.

Nodes are the contiguous integers 0..n-1. Adjacency is kept as sorted lists
so that index-based neighbor sampling is reproducible for a fixed RNG stream;
set mirrors give O(1) membership tests.
"""

from __future__ import annotations

import json
import math
import random
from bisect import insort
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .errors import GenerationError, ParseError

Infinity = math.inf


class Graph:
    """Mutable simple undirected graph with sorted adjacency lists.

    Mutation is confined to add_edge/remove_edge; rewiring steps own their
    graph exclusively, everything else treats instances as snapshots. The
    ``version`` counter lets metric caches detect staleness.
    """

    __slots__ = ("n", "_adj", "_sets", "_m", "_version", "__weakref__")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"node count must be nonnegative, got {n}")
        self.n = n
        self._adj: list[list[int]] = [[] for _ in range(n)]
        self._sets: list[set[int]] = [set() for _ in range(n)]
        self._m = 0
        self._version = 0

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def version(self) -> int:
        """Bumped on every mutation; used to invalidate metric caches."""
        return self._version

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IndexError(f"node {u} out of range [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._sets[u]

    def add_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise ValueError(f"self-loop ({u},{v}) not allowed")
        if v in self._sets[u]:
            raise ValueError(f"duplicate edge ({u},{v})")
        insort(self._adj[u], v)
        insort(self._adj[v], u)
        self._sets[u].add(v)
        self._sets[v].add(u)
        self._m += 1
        self._version += 1

    def remove_edge(self, u: int, v: int) -> None:
        self._check_node(u)
        self._check_node(v)
        if v not in self._sets[u]:
            raise ValueError(f"edge ({u},{v}) not present")
        self._adj[u].remove(v)
        self._adj[v].remove(u)
        self._sets[u].discard(v)
        self._sets[v].discard(u)
        self._m -= 1
        self._version += 1

    def neighbors(self, u: int) -> list[int]:
        """Sorted neighbor list of u. Callers must not mutate it."""
        self._check_node(u)
        return self._adj[u]

    def neighbor_set(self, u: int) -> set[int]:
        """Neighbor set of u. Callers must not mutate it."""
        self._check_node(u)
        return self._sets[u]

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._adj[u])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def edges(self):
        """Yield edges as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self._adj[u]:
                if v > u:
                    yield (u, v)

    def adjacency_lists(self) -> tuple[tuple[int, ...], ...]:
        """Immutable copy of the adjacency structure, for comparisons."""
        return tuple(tuple(a) for a in self._adj)

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g._adj = [list(a) for a in self._adj]
        g._sets = [set(s) for s in self._sets]
        g._m = self._m
        return g

    def validate(self) -> None:
        """Check simplicity, symmetry, index range, and sortedness."""
        m2 = 0
        for u, a in enumerate(self._adj):
            if sorted(a) != a:
                raise AssertionError(f"adjacency of {u} not sorted")
            if len(set(a)) != len(a):
                raise AssertionError(f"duplicate neighbors at {u}")
            if set(a) != self._sets[u]:
                raise AssertionError(f"set mirror out of sync at {u}")
            for v in a:
                if not 0 <= v < self.n:
                    raise AssertionError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise AssertionError(f"self-loop at {u}")
                if u not in self._sets[v]:
                    raise AssertionError(f"asymmetric edge ({u},{v})")
            m2 += len(a)
        if m2 != 2 * self._m:
            raise AssertionError("edge count out of sync")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distances from source; unreachable nodes get math.inf."""
    g._check_node(source)
    dist = [Infinity] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g._adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is Infinity:
                dist[v] = du
                queue.append(v)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path hop count between u and v (math.inf if disconnected)."""
    g._check_node(u)
    g._check_node(v)
    if u == v:
        return 0
    return bfs_distances(g, u)[v]


def is_connected(g: Graph) -> bool:
    """True iff BFS from node 0 reaches every node (vacuously for n <= 1)."""
    if g.n <= 1:
        return True
    seen = 1
    visited = bytearray(g.n)
    visited[0] = 1
    stack = [0]
    adj = g._adj
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not visited[v]:
                visited[v] = 1
                seen += 1
                stack.append(v)
    return seen == g.n


# ---------------------------------------------------------------------------
# Synthetic graph families
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path graph needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    g = path(n)
    g.add_edge(0, n - 1)
    return g


def dumbbell(clique_size: int) -> Graph:
    """Two cliques of size c joined by one bridge between nodes c-1 and c.

    Total 2c nodes; bridge endpoints are the last node of the first clique
    and the first node of the second.
    """
    c = clique_size
    if c < 2:
        raise ValueError("dumbbell needs clique_size >= 2")
    g = Graph(2 * c)
    for base in (0, c):
        for i in range(c):
            for j in range(i + 1, c):
                g.add_edge(base + i, base + j)
    g.add_edge(c - 1, c)
    return g


def ring_of_cliques(degree: int, num_cliques: int) -> Graph:
    """m cliques of size d+1 in a ring; every node ends with degree exactly d.

    Clique k occupies nodes [k(d+1), (k+1)(d+1)). Inside each clique the edge
    between its first and last node is dropped, and a ring edge joins the last
    node of clique k to the first node of clique k+1 (mod m).
    """
    d, m = degree, num_cliques
    if d < 3:
        raise ValueError("ring_of_cliques needs degree >= 3")
    if m < 1:
        raise ValueError("ring_of_cliques needs num_cliques >= 1")
    size = d + 1
    g = Graph(m * size)
    for k in range(m):
        base = k * size
        for i in range(size):
            for j in range(i + 1, size):
                if (i, j) == (0, size - 1):
                    continue
                g.add_edge(base + i, base + j)
    for k in range(m):
        last = k * size + size - 1
        first = ((k + 1) % m) * size
        g.add_edge(last, first)
    return g


def path_of_cliques(clique_size: int, num_cliques: int) -> Graph:
    """m cliques of size c chained by single edges, last node to first node."""
    c, m = clique_size, num_cliques
    if c < 2:
        raise ValueError("path_of_cliques needs clique_size >= 2")
    if m < 1:
        raise ValueError("path_of_cliques needs num_cliques >= 1")
    g = Graph(m * c)
    for k in range(m):
        base = k * c
        for i in range(c):
            for j in range(i + 1, c):
                g.add_edge(base + i, base + j)
    for k in range(m - 1):
        g.add_edge(k * c + c - 1, (k + 1) * c)
    return g


def random_regular(n: int, degree: int, seed: int, max_attempts: int = 100_000) -> Graph:
    """d-regular graph via configuration-model pairing with full restarts.

    Each attempt shuffles the nd stubs and pairs them off; any self-loop or
    repeated edge rejects the whole attempt, and simple-but-disconnected
    outcomes are rejected too. Degrees beyond ~7 make acceptance too rare for
    this rejection scheme and exhaust the budget.
    """
    d = degree
    if n < 1:
        raise ValueError("random_regular needs n >= 1")
    if not 0 <= d < n:
        raise ValueError(f"degree must satisfy 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = random.Random(seed)
    stubs_template = [u for u in range(n) for _ in range(d)]
    for _ in range(max_attempts):
        stubs = stubs_template[:]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            if u > v:
                u, v = v, u
            if (u, v) in edges:
                ok = False
                break
            edges.add((u, v))
        if not ok:
            continue
        g = Graph.from_edges(n, sorted(edges))
        if is_connected(g):
            return g
    raise GenerationError(
        f"no simple connected {d}-regular graph on {n} nodes found "
        f"in {max_attempts} pairing attempts"
    )


FAMILIES = (
    "dumbbell",
    "ring_of_cliques",
    "path_of_cliques",
    "path",
    "complete",
    "cycle",
    "random_regular",
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one synthetic family; unused fields stay None."""

    family: str
    n: int | None = None
    degree: int | None = None
    clique_size: int | None = None
    num_cliques: int | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        out = {"family": self.family}
        for key in ("n", "degree", "clique_size", "num_cliques", "seed"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        return cls(
            family=data["family"],
            n=data.get("n"),
            degree=data.get("degree"),
            clique_size=data.get("clique_size"),
            num_cliques=data.get("num_cliques"),
            seed=data.get("seed"),
        )


def _require(spec: GeneratorSpec, *fields: str) -> list[int]:
    values = []
    for f in fields:
        value = getattr(spec, f)
        if value is None:
            raise ValueError(f"family {spec.family!r} requires {f}")
        values.append(value)
    return values


def generate(spec: GeneratorSpec) -> Graph:
    """Build the graph described by spec. Raises ValueError on bad parameters."""
    fam = spec.family
    if fam == "dumbbell":
        (c,) = _require(spec, "clique_size")
        return dumbbell(c)
    if fam == "ring_of_cliques":
        d, m = _require(spec, "degree", "num_cliques")
        return ring_of_cliques(d, m)
    if fam == "path_of_cliques":
        c, m = _require(spec, "clique_size", "num_cliques")
        return path_of_cliques(c, m)
    if fam == "path":
        (n,) = _require(spec, "n")
        return path(n)
    if fam == "complete":
        (n,) = _require(spec, "n")
        return complete(n)
    if fam == "cycle":
        (n,) = _require(spec, "n")
        return cycle(n)
    if fam == "random_regular":
        n, d, seed = _require(spec, "n", "degree", "seed")
        return random_regular(n, d, seed)
    raise ValueError(f"unknown family {fam!r}; expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# Edge-list file format
# ---------------------------------------------------------------------------
# Line 1 is "n m", followed by m lines "u v" with u < v, 0-indexed. Lines
# starting with '#' are ignored; a trailing newline is required. A single
# "# generator: {...}" comment may carry the generating spec as JSON.

_GENERATOR_PREFIX = "# generator: "


def write_edge_list(target, g: Graph, generator: dict | None = None) -> None:
    """Write g in canonical edge-list form (ascending edges, u < v)."""
    lines = [f"{g.n} {g.edge_count}\n"]
    if generator is not None:
        lines.append(_GENERATOR_PREFIX + json.dumps(generator, sort_keys=True) + "\n")
    lines.extend(f"{u} {v}\n" for u, v in g.edges())
    Path(target).write_text("".join(lines))


def read_edge_list_meta(source) -> tuple[Graph, dict | None]:
    """Parse an edge-list file; return the graph and any generator comment."""
    text = Path(source).read_text()
    if text and not text.endswith("\n"):
        raise ParseError("missing trailing newline")
    generator = None
    header: tuple[int, int] | None = None
    g: Graph | None = None
    edges_seen = 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            if raw.startswith(_GENERATOR_PREFIX):
                try:
                    generator = json.loads(raw[len(_GENERATOR_PREFIX):])
                except json.JSONDecodeError as exc:
                    raise ParseError(f"bad generator comment: {exc}", ln) from exc
            continue
        if not line:
            raise ParseError("blank line not allowed", ln)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", ln)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"expected two integers, got {line!r}", ln) from exc
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(f"bad header {line!r}", ln)
            header = (a, b)
            g = Graph(a)
            continue
        assert g is not None
        if edges_seen >= header[1]:
            raise ParseError(f"more than the declared {header[1]} edges", ln)
        if not a < b:
            raise ParseError(f"edge must satisfy u < v, got {line!r}", ln)
        if b >= g.n:
            raise ParseError(f"node {b} out of range [0, {g.n})", ln)
        if g.has_edge(a, b):
            raise ParseError(f"duplicate edge {line!r}", ln)
        g.add_edge(a, b)
        edges_seen += 1
    if header is None or g is None:
        raise ParseError("empty file: missing 'n m' header")
    if edges_seen != header[1]:
        raise ParseError(f"declared {header[1]} edges but found {edges_seen}")
    return g, generator


def read_edge_list(source) -> Graph:
    return read_edge_list_meta(source)[0]
