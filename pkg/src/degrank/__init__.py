"""Degree-centrality rank estimation for scale-free networks.

The rank of a node of degree ``k`` is estimated from the network size,
the minimum degree and the average degree alone, without the rest of the
graph. The package also ships the ground-truth ranking oracle, a seeded
Barabási–Albert generator, simple sampling estimators, and an experiment
harness that compares estimated and exact ranks.
"""

from degrank.errors import ConfigError, DegrankError, DomainError, EdgeListParseError
from degrank.generators import BaConfig, ba_generate
from degrank.graph import (
    DegreeSequence,
    Graph,
    RankTable,
    degree_sequence,
    exact_ranks,
    load_edge_list,
    ordinal_ranks,
    write_edge_list,
)
from degrank.netprobe import (
    AccessOracle,
    ParamEstimate,
    estimate_avg_degree,
    estimate_k_min,
    estimate_n_collisions,
    estimate_params,
)
from degrank.rank_model import (
    NetworkParams,
    RankEstimate,
    compare_nodes,
    expected_rank,
    fit_gamma,
    normalization_c,
    pdf_f,
    rank_pmf,
    tail_probability,
    tail_probability_exact,
)

__all__ = [
    "AccessOracle",
    "BaConfig",
    "ConfigError",
    "DegrankError",
    "DegreeSequence",
    "DomainError",
    "EdgeListParseError",
    "Graph",
    "NetworkParams",
    "ParamEstimate",
    "RankEstimate",
    "RankTable",
    "ba_generate",
    "compare_nodes",
    "degree_sequence",
    "estimate_avg_degree",
    "estimate_k_min",
    "estimate_n_collisions",
    "estimate_params",
    "exact_ranks",
    "expected_rank",
    "fit_gamma",
    "load_edge_list",
    "normalization_c",
    "ordinal_ranks",
    "pdf_f",
    "rank_pmf",
    "tail_probability",
    "tail_probability_exact",
    "write_edge_list",
]

__version__ = "0.1.0"
