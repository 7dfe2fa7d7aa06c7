"""Long-range matching benchmark over graphs rewired by the expander-rewire CLI."""

from .dataset import (
    LABEL_SET,
    NUM_CLASSES,
    TARGET_NODE,
    MatchDataset,
    build_dataset,
    read_edge_list,
    recover_answers_by_matching,
)
from .model import GraphAttentionLayer, MatchNet, adjacency_mask
from .primary_cli import CliNotFoundError, find_cli, generate_path_of_cliques, rewire
from .sweep import SweepRow, rows_to_csv, sweep, write_sweep_csv
from .train import TrainResult, train_and_eval

__version__ = "0.1.0"
