"""Independent brute-force oracles used to cross-check the implementation.

Everything here deliberately avoids the code paths it checks: distances come
from Floyd-Warshall instead of BFS, transport plans from permutation
enumeration instead of LP/assignment, eigenvalues from power iteration
instead of a dense eigensolver, and circuit probabilities from explicit
failure-pattern enumeration instead of the marginal propagation.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def floyd_warshall(g) -> list[list[float]]:
    n = g.n
    dist = [[math.inf] * n for _ in range(n)]
    for u in range(n):
        dist[u][u] = 0
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == math.inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def cheeger_bruteforce(g) -> Fraction:
    """Min |boundary(S)|/|S| over every subset with |S| <= n/2."""
    n = g.n
    adj = [set(g.neighbors(u)) for u in range(n)]
    best = None
    for mask in range(1, 1 << n):
        members = [u for u in range(n) if mask >> u & 1]
        if len(members) > n // 2:
            continue
        boundary = sum(1 for u in members for v in adj[u] if not mask >> v & 1)
        ratio = Fraction(boundary, len(members))
        if best is None or ratio < best:
            best = ratio
    return best


def triangles_bruteforce(g) -> int:
    count = 0
    for a, b, c in itertools.combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            count += 1
    return count


def top_two_eigenvalues_power(a: np.ndarray, iters: int = 200_000, tol: float = 1e-15):
    """mu1, mu2 of a symmetric matrix by shifted power iteration with deflation."""
    n = a.shape[0]
    shift = float(np.abs(a).sum(axis=1).max()) + 1.0
    shifted = a + shift * np.eye(n)

    def dominant(mat, exclude=None):
        rng = np.random.default_rng(7)
        v = rng.standard_normal(n)
        if exclude is not None:
            v -= exclude * (exclude @ v)
        v /= np.linalg.norm(v)
        value = 0.0
        for _ in range(iters):
            w = mat @ v
            if exclude is not None:
                w -= exclude * (exclude @ w)
            norm = np.linalg.norm(w)
            w /= norm
            new_value = w @ (mat @ w)
            if abs(new_value - value) < tol * max(1.0, abs(new_value)):
                v = w
                value = new_value
                break
            v = w
            value = new_value
        return value, v

    mu1s, v1 = dominant(shifted)
    mu2s, _ = dominant(shifted, exclude=v1)
    return mu1s - shift, mu2s - shift


def w1_bruteforce(cost: np.ndarray, mu_masses, nu_masses, max_atoms: int = 8) -> float:
    """Exact W1 for rational masses via atom expansion + permutation search."""
    denominators = [Fraction(m).limit_denominator(10**6).denominator
                    for m in list(mu_masses) + list(nu_masses)]
    scale = math.lcm(*denominators)
    row_atoms = []
    for i, m in enumerate(mu_masses):
        row_atoms.extend([i] * round(m * scale))
    col_atoms = []
    for j, m in enumerate(nu_masses):
        col_atoms.extend([j] * round(m * scale))
    assert len(row_atoms) == len(col_atoms) <= max_atoms, "oracle limited to tiny supports"
    best = math.inf
    for perm in itertools.permutations(range(len(col_atoms))):
        total = sum(cost[row_atoms[k], col_atoms[perm[k]]] for k in range(len(row_atoms)))
        best = min(best, total)
    return best / scale


def circuit_output_prob_enumeration(circuit, delta: float, assignment) -> float:
    """P(output = 1 | inputs) by summing over every gate-failure pattern."""
    n_gates = len(circuit.gates)
    total = 0.0
    for pattern in range(1 << n_gates):
        weight = 1.0
        wires = [int(b) for b in assignment]
        for gi, gate in enumerate(circuit.gates):
            idx = 0
            fan_in = len(gate.wires)
            for pos, w in enumerate(gate.wires):
                idx |= wires[w] << (fan_in - 1 - pos)
            out = gate.truth_table[idx]
            if pattern >> gi & 1:
                out ^= 1
                weight *= delta
            else:
                weight *= 1.0 - delta
            wires.append(out)
        if wires[-1] == 1:
            total += weight
    return total


def circuit_output_probs_enumeration_all(circuit, delta: float) -> np.ndarray:
    """P(output = 1 | x) for every input assignment, by failure-pattern sums.

    Vectorized over assignments (most-significant-bit-first encoding, matching
    the scalar oracle) but still an explicit enumeration over gate failures.
    """
    n = circuit.n_inputs
    n_gates = len(circuit.gates)
    n_assign = 1 << n
    assign_bits = np.array(
        [[(a >> (n - 1 - i)) & 1 for i in range(n)] for a in range(n_assign)],
        dtype=np.int64,
    )
    probs = np.zeros(n_assign)
    for pattern in range(1 << n_gates):
        weight = 1.0
        wires = [assign_bits[:, i] for i in range(n)]
        for gi, gate in enumerate(circuit.gates):
            fan_in = len(gate.wires)
            idx = np.zeros(n_assign, dtype=np.int64)
            for pos, w in enumerate(gate.wires):
                idx |= wires[w] << (fan_in - 1 - pos)
            out = np.array(gate.truth_table, dtype=np.int64)[idx]
            if pattern >> gi & 1:
                out = 1 - out
                weight *= delta
            else:
                weight *= 1.0 - delta
            wires.append(out)
        probs += weight * wires[-1]
    return probs
