"""A small graph attention network over dense adjacency masks.

Batched for many instances of the same 30-node graph, so layers work on
[batch, nodes, features] tensors with a shared [nodes, nodes] neighbor mask
(self-loops included).
"""

from __future__ import annotations

import torch
from torch import nn


class GraphAttentionLayer(nn.Module):
    def __init__(self, in_dim: int, out_dim: int):
        super().__init__()
        self.proj = nn.Linear(in_dim, out_dim, bias=False)
        self.att_dst = nn.Parameter(torch.empty(out_dim))
        self.att_src = nn.Parameter(torch.empty(out_dim))
        nn.init.xavier_uniform_(self.proj.weight)
        nn.init.uniform_(self.att_dst, -0.1, 0.1)
        nn.init.uniform_(self.att_src, -0.1, 0.1)

    def forward(self, h: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        z = self.proj(h)  # [B, N, F]
        scores = (
            (z @ self.att_dst).unsqueeze(2) + (z @ self.att_src).unsqueeze(1)
        )  # [B, N, N]; entry (i, j) scores node i attending to j
        scores = torch.nn.functional.leaky_relu(scores, negative_slope=0.2)
        scores = scores.masked_fill(~mask, float("-inf"))
        alpha = torch.softmax(scores, dim=2)
        return torch.nn.functional.elu(alpha @ z)


class MatchNet(nn.Module):
    """Stacked attention layers with a classifier head read out at one node."""

    def __init__(self, in_dim: int, width: int, layers: int, num_classes: int,
                 readout_node: int):
        super().__init__()
        dims = [in_dim] + [width] * layers
        self.layers = nn.ModuleList(
            GraphAttentionLayer(dims[i], dims[i + 1]) for i in range(layers)
        )
        self.head = nn.Linear(width, num_classes)
        self.readout_node = readout_node

    def forward(self, x: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        h = x
        for layer in self.layers:
            h = layer(h, mask)
        return self.head(h[:, self.readout_node, :])


def adjacency_mask(n_nodes: int, edges, device=None) -> torch.Tensor:
    mask = torch.eye(n_nodes, dtype=torch.bool, device=device)
    for u, v in edges:
        mask[u, v] = True
        mask[v, u] = True
    return mask
