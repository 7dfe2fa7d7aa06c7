"""Channel contraction, noisy-circuit information decay, and exact tree-circuit MI.

Units are bits throughout, so the depth-zero decay bound reads as one bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DomainError, ParseError

TREE_SIM_MAX_INPUTS = 12
_JOINT_TOLERANCE = 1e-12


def bsc_contraction(delta: float) -> float:
    """KL contraction coefficient (1 - 2*delta)^2 of a binary symmetric channel."""
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"crossover probability must lie in [0, 1/2], got {delta}")
    return (1.0 - 2.0 * delta) ** 2


class EsBound(NamedTuple):
    """Information-decay bound (eta*k)^d in bits: raw value and its 1-bit clamp.

    The raw value is the authoritative bound even when vacuous (> 1 bit); the
    clamp reflects that a uniform binary input carries at most one bit.
    """

    raw_bits: float
    clamped_bits: float


def es_bound(delta: float, k: int, d: int) -> EsBound:
    """Decay bound for fan-in-k circuits of delta-noisy gates at distance d."""
    if k < 1:
        raise ValueError(f"fan-in must be >= 1, got {k}")
    if d < 0:
        raise ValueError(f"distance must be >= 0, got {d}")
    eta = bsc_contraction(delta)
    raw = (eta * k) ** d
    return EsBound(raw, min(raw, 1.0))


def reliability_threshold(k: int) -> float:
    """Noise level 1/2 - 1/(2*sqrt(k)) below which eta*k exceeds 1."""
    if k < 1:
        raise ValueError(f"fan-in must be >= 1, got {k}")
    return 0.5 - 0.5 / math.sqrt(k)


def mutual_information(joint) -> float:
    """I(X;Y) in bits from a joint probability table (rows X, columns Y)."""
    table = np.asarray(joint, dtype=float)
    if table.ndim != 2:
        raise DomainError("joint table must be two-dimensional")
    if (table < -1e-15).any():
        raise DomainError("joint table has negative entries")
    table = np.clip(table, 0.0, None)
    total = table.sum()
    if abs(total - 1.0) > _JOINT_TOLERANCE:
        raise DomainError(f"joint table must sum to 1, got {total}")
    px = table.sum(axis=1, keepdims=True)
    py = table.sum(axis=0, keepdims=True)
    mask = table > 0
    ratio = np.ones_like(table)
    np.divide(table, px * py, out=ratio, where=mask)
    return float((table[mask] * np.log2(ratio[mask])).sum())


# ---------------------------------------------------------------------------
# Noisy Boolean circuits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gate:
    """One Boolean gate: wire references and a truth table.

    Wires index inputs (0..n-1) or earlier gate outputs (n, n+1, ...). The
    truth table lists the output for each input pattern in lexicographic
    order, the first wire being the most significant bit.
    """

    wires: tuple[int, ...]
    truth_table: tuple[int, ...]

    def __post_init__(self):
        if len(self.truth_table) != 1 << len(self.wires):
            raise ValueError(
                f"truth table of a fan-in-{len(self.wires)} gate needs "
                f"{1 << len(self.wires)} entries, got {len(self.truth_table)}"
            )
        if any(b not in (0, 1) for b in self.truth_table):
            raise ValueError("truth table entries must be 0 or 1")


@dataclass(frozen=True)
class NoisyCircuit:
    """Feed-forward circuit of noisy gates; the last gate is the output.

    Gates may reference only inputs and earlier gates, which makes the wiring
    acyclic by construction. Every gate flips its output independently with
    the failure probability supplied at simulation time.
    """

    n_inputs: int
    gates: tuple[Gate, ...]
    fanin_bound: int

    def __post_init__(self):
        if self.n_inputs < 1:
            raise ValueError("circuit needs at least one input")
        if not self.gates:
            raise ValueError("circuit needs at least one gate")
        for gi, gate in enumerate(self.gates):
            if len(gate.wires) > self.fanin_bound:
                raise ValueError(
                    f"gate {gi} has fan-in {len(gate.wires)} > bound {self.fanin_bound}"
                )
            for w in gate.wires:
                if not 0 <= w < self.n_inputs + gi:
                    raise ValueError(
                        f"gate {gi} references wire {w}, valid range is "
                        f"[0, {self.n_inputs + gi})"
                    )

    @property
    def output_wire(self) -> int:
        return self.n_inputs + len(self.gates) - 1

    @property
    def is_tree(self) -> bool:
        """True iff every input and gate output feeds at most one gate."""
        uses = [0] * self.output_wire
        for gate in self.gates:
            for w in gate.wires:
                uses[w] += 1
        return all(c <= 1 for c in uses)

    def input_distance(self, input_index: int) -> float:
        """Shortest directed path length (in wires) from an input to the output."""
        if not 0 <= input_index < self.n_inputs:
            raise IndexError(f"input index {input_index} out of range")
        # walk backward from the output gate
        dist_to_out = {self.output_wire: 0}
        frontier = [self.output_wire]
        while frontier:
            next_frontier = []
            for wire in frontier:
                if wire < self.n_inputs:
                    continue
                gate = self.gates[wire - self.n_inputs]
                for w in gate.wires:
                    cand = dist_to_out[wire] + 1
                    if w not in dist_to_out or cand < dist_to_out[w]:
                        dist_to_out[w] = cand
                        next_frontier.append(w)
            frontier = next_frontier
        return dist_to_out.get(input_index, math.inf)


def circuit_to_dict(c: NoisyCircuit) -> dict:
    return {
        "inputs": c.n_inputs,
        "fanin_bound": c.fanin_bound,
        "gates": [
            {"wires": list(g.wires), "truth_table": "".join(map(str, g.truth_table))}
            for g in c.gates
        ],
        "output": c.output_wire,
    }


def circuit_from_dict(data: dict) -> NoisyCircuit:
    try:
        gates = tuple(
            Gate(tuple(g["wires"]), tuple(int(b) for b in g["truth_table"]))
            for g in data["gates"]
        )
        n_inputs = int(data["inputs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad circuit description: {exc}") from exc
    fanin = data.get("fanin_bound")
    if fanin is None:
        fanin = max(len(g.wires) for g in gates)
    circuit = NoisyCircuit(n_inputs=n_inputs, gates=gates, fanin_bound=int(fanin))
    declared = data.get("output")
    if declared is not None and int(declared) != circuit.output_wire:
        raise ParseError(
            f"output must reference the last gate (wire {circuit.output_wire}), "
            f"got {declared}"
        )
    return circuit


def load_circuit(source) -> NoisyCircuit:
    try:
        data = json.loads(Path(source).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid circuit JSON: {exc}") from exc
    return circuit_from_dict(data)


def save_circuit(target, c: NoisyCircuit) -> None:
    Path(target).write_text(json.dumps(circuit_to_dict(c), indent=2) + "\n")


def _gate_output_prob(gate: Gate, wire_probs: list[float], delta: float) -> float:
    """P(noisy gate outputs 1) given independent marginals of its input wires."""
    q = 0.0
    fan_in = len(gate.wires)
    for pattern in range(1 << fan_in):
        p = 1.0
        for pos, w in enumerate(gate.wires):
            bit = (pattern >> (fan_in - 1 - pos)) & 1
            p *= wire_probs[w] if bit else 1.0 - wire_probs[w]
        if gate.truth_table[pattern]:
            q += p
    return (1.0 - delta) * q + delta * (1.0 - q)


def output_prob_given_inputs(c: NoisyCircuit, delta: float, assignment) -> float:
    """P(output = 1 | inputs), by bottom-up propagation of wire marginals.

    Valid only when the circuit is a tree: each wire feeds one gate, so gate
    inputs are independent conditioned on the circuit inputs.
    """
    probs = [float(b) for b in assignment]
    for gate in c.gates:
        probs.append(_gate_output_prob(gate, probs, delta))
    return probs[-1]


def simulate_tree_circuit(
    c: NoisyCircuit, delta: float, input_index: int
) -> tuple[float, float]:
    """Exact I(X_i; Y) in bits for uniform i.i.d. inputs, plus its decay bound.

    Returns (mutual information, raw (eta*k)^d bound) where d is the shortest
    directed distance from the chosen input to the output.
    """
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"gate failure probability must lie in [0, 1/2], got {delta}")
    if not c.is_tree:
        raise DomainError(
            "exact propagation needs a tree circuit: some wire feeds several gates"
        )
    if c.n_inputs > TREE_SIM_MAX_INPUTS:
        raise CapacityError(
            f"tree simulation enumerates 2^n assignments; capped at "
            f"n <= {TREE_SIM_MAX_INPUTS} (got {c.n_inputs})"
        )
    if not 0 <= input_index < c.n_inputs:
        raise IndexError(f"input index {input_index} out of range")
    n = c.n_inputs
    joint = np.zeros((2, 2))
    weight = 0.5 ** n
    for assignment in range(1 << n):
        bits = [(assignment >> (n - 1 - i)) & 1 for i in range(n)]
        p1 = output_prob_given_inputs(c, delta, bits)
        xi = bits[input_index]
        joint[xi, 1] += weight * p1
        joint[xi, 0] += weight * (1.0 - p1)
    mi = mutual_information(joint)
    d = c.input_distance(input_index)
    if d == math.inf:
        # input has no path to the output; it carries no information
        eta_k = bsc_contraction(delta) * c.fanin_bound
        bound = 0.0 if eta_k < 1.0 else math.inf
    else:
        bound = es_bound(delta, c.fanin_bound, int(d)).raw_bits
    return mi, bound


# ---------------------------------------------------------------------------
# Numeric contraction-coefficient estimator
# ---------------------------------------------------------------------------

def estimate_contraction(channel, grid: int = 1000) -> float:
    """Grid lower bound on the KL contraction coefficient of a binary-input channel.

    Sweeps input distributions P = (1-p, p), Q = (1-q, q) over an interior
    grid and maximizes D(KP||KQ)/D(P||Q). Approaches the supremum from below
    as the grid refines.
    """
    k = np.asarray(channel, dtype=float)
    if k.ndim != 2 or k.shape[0] != 2:
        raise DomainError("estimator expects a 2-row (binary-input) channel matrix")
    if (k < -1e-12).any() or (np.abs(k.sum(axis=1) - 1.0) > 1e-9).any():
        raise DomainError("channel matrix must be row-stochastic")
    if grid < 100:
        raise ValueError(f"grid resolution must be >= 100, got {grid}")
    p = np.arange(1, grid) / grid

    def entropy_like(dist):  # sum p*log(p) with 0 log 0 = 0
        return np.where(dist > 0, dist * np.log(np.where(dist > 0, dist, 1.0)), 0.0)

    # output distributions for every grid point: row i is (1-p_i)*K0 + p_i*K1
    out = np.outer(1.0 - p, k[0]) + np.outer(p, k[1])
    log_out = np.log(np.where(out > 0, out, 1.0))
    # D(out_i || out_j) = sum_y out_i log out_i - sum_y out_i log out_j
    self_term = entropy_like(out).sum(axis=1)
    cross = out @ log_out.T
    num = self_term[:, None] - cross
    # binary divergence D(P_i || P_j) on the inputs
    in_dist = np.stack([1.0 - p, p], axis=1)
    log_in = np.log(in_dist)
    den = entropy_like(in_dist).sum(axis=1)[:, None] - in_dist @ log_in.T
    mask = ~np.eye(grid - 1, dtype=bool)
    ratios = num[mask] / den[mask]
    return float(np.clip(ratios.max(), 0.0, 1.0))
