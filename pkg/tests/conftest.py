"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import random
import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from expander_rewire.graph import Graph


def build_connected_graph(seed: int, min_n: int = 4, max_n: int = 24,
                          extra_frac: float = 1.0) -> Graph:
    """Random connected graph: random spanning tree plus extra random edges."""
    rng = random.Random(seed)
    n = rng.randint(min_n, max_n)
    g = Graph(n)
    nodes = list(range(n))
    rng.shuffle(nodes)
    for idx in range(1, n):
        g.add_edge(nodes[idx], nodes[rng.randrange(idx)])
    extra = rng.randint(0, int(extra_frac * n))
    attempts = 0
    while extra > 0 and attempts < 20 * n:
        u, v = rng.randrange(n), rng.randrange(n)
        attempts += 1
        if u != v and not g.has_edge(u, v):
            g.add_edge(u, v)
            extra -= 1
    return g


connected_graphs = st.builds(build_connected_graph, st.integers(0, 2**32 - 1))

small_connected_graphs = st.builds(
    build_connected_graph, st.integers(0, 2**32 - 1),
    min_n=st.just(3), max_n=st.just(10),
)


def build_tree_circuit(seed: int, max_inputs: int = 8, max_fanin: int = 3):
    """Random tree-shaped noisy circuit; every wire feeds at most one gate.

    Starts from the inputs as available wires and keeps consuming 1..max_fanin
    of them into fresh gates with random truth tables until a single wire
    (the output) remains.
    """
    from expander_rewire.info_contraction import Gate, NoisyCircuit

    rng = random.Random(seed)
    n_inputs = rng.randint(1, max_inputs)
    available = list(range(n_inputs))
    gates = []
    while len(available) > 1 or not gates:
        fan_in = rng.randint(1, min(max_fanin, len(available)))
        rng.shuffle(available)
        wires = tuple(sorted(available[:fan_in]))
        available = available[fan_in:]
        table = tuple(rng.randint(0, 1) for _ in range(1 << fan_in))
        gates.append(Gate(wires, table))
        available.append(n_inputs + len(gates) - 1)
    return NoisyCircuit(n_inputs=n_inputs, gates=tuple(gates), fanin_bound=max_fanin)
