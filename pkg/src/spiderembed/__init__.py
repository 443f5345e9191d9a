"""Spider-tree embeddings in dense graphs.

Constructive embedding algorithms with certificate validation, exact
cycle/path search, an independent exhaustive oracle, deterministic graph
generators, and a conjecture-scanning harness.
"""

from .errors import (BudgetExhaustedError, GraphParseError, InfeasibleError,
                     PreconditionError, ProofDiscrepancyError, SpiderError)
from .graph import (DegreeStats, Graph, SpiderEmbedding, SpiderShape,
                    connected_components, degree_stats, exceeds_threshold,
                    induced_subgraph, is_connected, parse_edge_list,
                    serialize_graph, validate_embedding)
from .peel import PeelResult, minimal_dense_subgraph
from .cycles import (DEFAULT_SEARCH_NODES, CycleCert, PathCert, SearchBudget,
                     cycle_is_valid, hamiltonian_cycle, is_two_connected,
                     max_cycle_through, max_path_from_avoiding, reverse_cycle,
                     rotate_cycle)
from .embed import (CASE_1A, CASE_1B, CASE_1C, CASE_1_OUTSIDE,
                    CASE_2_ON_CYCLE, CASE_2_OUTSIDE, CASE_HAMILTONIAN,
                    CASE_ORACLE, EmbedOutcome, EmbedTrace,
                    embed_4leg_biconnected, embed_any, embed_in_hamiltonian,
                    enumerate_shapes, oracle_embed, relabel_embedding)
from .scan import (RNG_STREAM, ScanConfig, ScanReport, enumerate_labeled_graphs,
                   gen_hamiltonian, gen_random_dense, gen_two_connected,
                   graph_id, parse_scan_config, run_conjecture_scan)

__all__ = [
    "BudgetExhaustedError", "GraphParseError", "InfeasibleError",
    "PreconditionError", "ProofDiscrepancyError", "SpiderError",
    "DegreeStats", "Graph", "SpiderEmbedding", "SpiderShape",
    "connected_components", "degree_stats", "exceeds_threshold",
    "induced_subgraph", "is_connected", "parse_edge_list", "serialize_graph",
    "validate_embedding",
    "PeelResult", "minimal_dense_subgraph",
    "DEFAULT_SEARCH_NODES", "CycleCert", "PathCert", "SearchBudget",
    "cycle_is_valid", "hamiltonian_cycle", "is_two_connected",
    "max_cycle_through", "max_path_from_avoiding", "reverse_cycle",
    "rotate_cycle",
    "CASE_1A", "CASE_1B", "CASE_1C", "CASE_1_OUTSIDE", "CASE_2_ON_CYCLE",
    "CASE_2_OUTSIDE", "CASE_HAMILTONIAN", "CASE_ORACLE",
    "EmbedOutcome", "EmbedTrace", "embed_4leg_biconnected", "embed_any",
    "embed_in_hamiltonian", "enumerate_shapes", "oracle_embed",
    "relabel_embedding",
    "RNG_STREAM", "ScanConfig", "ScanReport", "enumerate_labeled_graphs",
    "gen_hamiltonian", "gen_random_dense", "gen_two_connected", "graph_id",
    "parse_scan_config", "run_conjecture_scan",
]
