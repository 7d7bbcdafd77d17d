"""graphcrit: structural-semantic criticality analysis for evolving graphs.

Core capabilities:

* spectral entropy of graph snapshots (structural and semantic) and the
  discovery parameter balancing them;
* surprising-edge statistics and threshold sensitivity;
* rolling entropy cross-correlation with sign-sustain transition detection;
* topology/semantics decoupling diagnostics (betweenness vs neighbor
  diversity, Louvain communities, PCA centroid distances);
* a deterministic synthetic growth generator and a toy policy-gradient
  trainer for the discovery-maximizing reward.

See the demos/ scripts for narrative walkthroughs of each capability.
"""

__version__ = "0.1.0"

from .dynamics import (CrossCorrelationTrace, EntropyTrace, TransitionReport,
                       XCorrPoint, build_trace, detect_transition, pearson,
                       rolling_cross_correlation)
from .edges import (EdgeFlag, SurpriseStats, ThresholdSweep, classify_edges,
                    threshold_sweep)
from .embeddings import (EmbeddingTable, PcaProjection, cosine, fallback_embed,
                         fallback_table, load_embeddings, pca_2d, save_embeddings)
from .graphs import (GraphSnapshot, SnapshotSeries, adjacency_and_degrees,
                     load_edge_list, load_series, write_edge_list)
from .growth import GrowthConfig, GrowthRun, generate_series, grow, write_corpus
from .rl import (EpisodeLog, EpisodeStats, PolicyParams, PolicyStep, RewardConfig,
                 policy_probs, reinforce_update, reward, train)
from .spectral import (EntropySample, SpectrumResult, discovery_parameter,
                       normalized_laplacian, semantic_adjacency, semantic_entropy,
                       structural_entropy, von_neumann_entropy)
from .topology import (CentroidHistogram, CommunityAssignment, NodeMetrics,
                       bc_diversity_correlation, betweenness,
                       centroid_distance_histogram, clustering_coefficient,
                       degree_distribution, louvain, modularity,
                       neighbor_diversity, node_metrics)

__all__ = [
    "__version__",
    # graphs
    "GraphSnapshot", "SnapshotSeries", "load_edge_list", "load_series",
    "write_edge_list", "adjacency_and_degrees",
    # embeddings
    "EmbeddingTable", "PcaProjection", "load_embeddings", "save_embeddings",
    "fallback_embed", "fallback_table", "cosine", "pca_2d",
    # spectral
    "SpectrumResult", "EntropySample", "normalized_laplacian",
    "von_neumann_entropy", "structural_entropy", "semantic_adjacency",
    "semantic_entropy", "discovery_parameter",
    # dynamics
    "EntropyTrace", "CrossCorrelationTrace", "XCorrPoint", "TransitionReport",
    "build_trace", "rolling_cross_correlation", "detect_transition", "pearson",
    # edges
    "EdgeFlag", "SurpriseStats", "ThresholdSweep", "classify_edges",
    "threshold_sweep",
    # topology
    "NodeMetrics", "CommunityAssignment", "CentroidHistogram", "betweenness",
    "neighbor_diversity", "node_metrics", "bc_diversity_correlation", "louvain",
    "modularity", "centroid_distance_histogram", "degree_distribution",
    "clustering_coefficient",
    # growth
    "GrowthConfig", "GrowthRun", "grow", "generate_series", "write_corpus",
    # rl
    "RewardConfig", "PolicyParams", "PolicyStep", "EpisodeLog", "EpisodeStats",
    "reward", "policy_probs", "reinforce_update", "train",
]
