"""Graph rewiring toward expanders, with oversquashing diagnostics.

Local edge flips (rlef/grlef) turn bottlenecked graphs into expander-like
graphs while preserving degrees and connectivity; a curvature-based non-local
baseline (sdrf) is included for comparison, together with spectral, Cheeger,
effective-resistance, curvature, and information-contraction metrics.
"""

from .curvature import (
    CurvatureReport,
    KantorovichResult,
    NodeDistribution,
    curvature_report,
    edge_curvature_map,
    kantorovich_norm,
    ollivier_ricci_edge,
    wasserstein1,
)
from .errors import CapacityError, DomainError, GenerationError, ParseError
from .graph import (
    FAMILIES,
    GeneratorSpec,
    Graph,
    bfs_distances,
    complete,
    cycle,
    distance,
    dumbbell,
    generate,
    is_connected,
    path,
    path_of_cliques,
    random_regular,
    read_edge_list,
    read_edge_list_meta,
    ring_of_cliques,
    write_edge_list,
)
from .info_contraction import (
    EsBound,
    Gate,
    NoisyCircuit,
    bsc_contraction,
    circuit_from_dict,
    circuit_to_dict,
    es_bound,
    estimate_contraction,
    load_circuit,
    mutual_information,
    output_prob_given_inputs,
    reliability_threshold,
    save_circuit,
    simulate_tree_circuit,
)
from .rewiring import (
    ALGORITHMS,
    DEFAULT_TAU,
    RewireTrace,
    StepOutcome,
    TraceRecord,
    grlef_step,
    rlef_step,
    run,
    sdrf_step,
)
from .spectral import (
    CheegerReport,
    SpectrumReport,
    adjacency_matrix,
    cheeger_bounds,
    cheeger_exact,
    common_neighbors,
    effective_resistance,
    laplacian_matrix,
    laplacian_pinv,
    normalized_gap,
    resistance_triangle_bound,
    spectrum,
    triangle_count,
)

__version__ = "0.1.0"
