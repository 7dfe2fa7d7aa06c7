"""Long-range label-matching instances over a path-of-cliques layout.

Nodes 0..8 (the first nine nodes of the first clique) form the label set S;
node 29 (the last node of the third clique) is the target T. Every instance
assigns S a fresh random permutation of the nine one-hot key vectors, gives T
a copy of one of them, and asks which member of S holds the matching key.
All other nodes carry zero features, so the answer is only recoverable by
routing information across the graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

LABEL_SET = tuple(range(9))
TARGET_NODE = 29
NUM_CLASSES = len(LABEL_SET)
REQUIRED_NODES = 30


def read_edge_list(source: Path | str) -> tuple[int, list[tuple[int, int]]]:
    """Parse the rewiring toolkit's edge-list format (comments ignored)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    for raw in Path(source).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        a, b = (int(x) for x in line.split())
        if n is None:
            n, m = a, b
            continue
        edges.append((a, b))
    if n is None or len(edges) != m:
        raise ValueError(f"malformed edge list {source}")
    return n, edges


@dataclass(frozen=True)
class MatchDataset:
    """A batch of matching instances sharing one graph."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    features: np.ndarray  # [count, n_nodes, NUM_CLASSES] float32
    answers: np.ndarray  # [count] int64, index into LABEL_SET

    @property
    def count(self) -> int:
        return self.features.shape[0]


def build_dataset(base_graph_file: Path | str, count: int, seed: int) -> MatchDataset:
    """`count` instances with independent random key permutations."""
    n, edges = read_edge_list(base_graph_file)
    if n < REQUIRED_NODES:
        raise ValueError(
            f"base graph needs at least {REQUIRED_NODES} nodes, got {n}"
        )
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    features = np.zeros((count, n, NUM_CLASSES), dtype=np.float32)
    answers = np.zeros(count, dtype=np.int64)
    keys = list(range(NUM_CLASSES))
    for idx in range(count):
        rng.shuffle(keys)
        for pos, node in enumerate(LABEL_SET):
            features[idx, node, keys[pos]] = 1.0
        answer = rng.randrange(NUM_CLASSES)
        features[idx, TARGET_NODE, keys[answer]] = 1.0
        answers[idx] = answer
    return MatchDataset(
        n_nodes=n, edges=tuple(edges), features=features, answers=answers
    )


def recover_answers_by_matching(ds: MatchDataset) -> np.ndarray:
    """Solve every instance exactly by comparing key vectors (sanity oracle)."""
    target = ds.features[:, TARGET_NODE, :]
    label_block = ds.features[:, LABEL_SET, :]
    matches = (label_block == target[:, None, :]).all(axis=2)
    assert (matches.sum(axis=1) == 1).all(), "exactly one key must match"
    return matches.argmax(axis=1)
