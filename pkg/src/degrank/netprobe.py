"""Restricted graph access and sampling estimators for n, d_avg and k_min.

Estimators only see the graph through an :class:`AccessOracle`, which
answers three kinds of query (random node, degree, neighbours) and counts
every one it serves. The estimators here are deliberately plain: a
uniform-sample mean for the average degree, the sample minimum for the
minimum degree, and a birthday-collision count for the node count.

Every estimator also has a census mode that enumerates the whole graph; it
exists for testing and is flagged in :class:`ParamEstimate`.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass

import numpy as np

from degrank.errors import ConfigError
from degrank.graph import Graph

QUERY_KINDS = ("random_node", "degree", "neighbors")


class AccessOracle:
    """Counted, read-only access to a graph. Safe to share between threads."""

    def __init__(self, graph: Graph):
        self._graph = graph
        self._lock = threading.Lock()
        self.query_counter: Counter[str] = Counter({kind: 0 for kind in QUERY_KINDS})

    def _count(self, kind: str, amount: int = 1) -> None:
        with self._lock:
            self.query_counter[kind] += amount

    def random_node(self, rng: np.random.Generator) -> int:
        self._count("random_node")
        return int(rng.integers(self._graph.node_count))

    def random_nodes(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """``size`` uniform draws with replacement; counts as ``size`` queries."""
        self._count("random_node", size)
        return rng.integers(self._graph.node_count, size=size)

    def degree(self, node: int) -> int:
        self._count("degree")
        return int(self._graph.degrees[node])

    def degrees(self, nodes: np.ndarray) -> np.ndarray:
        nodes = np.asarray(nodes)
        self._count("degree", nodes.size)
        return self._graph.degrees[nodes]

    def neighbors(self, node: int) -> np.ndarray:
        self._count("neighbors")
        return self._graph.neighbors(node)

    def census_degrees(self) -> np.ndarray:
        """Every node's degree, bypassing sampling (counted as n degree queries)."""
        return self.degrees(np.arange(self._graph.node_count))

    @property
    def census_node_count(self) -> int:
        return self._graph.node_count

    @property
    def census_k_max(self) -> int:
        return int(self._graph.degrees.max())


def _check_samples(samples: int, minimum: int) -> None:
    if samples < minimum:
        raise ConfigError(f"need at least {minimum} sample(s), got {samples}")


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def estimate_avg_degree(oracle: AccessOracle, samples: int, seed=None, census: bool = False) -> float:
    """Mean degree of ``samples`` nodes drawn uniformly with replacement."""
    if census:
        return float(oracle.census_degrees().mean())
    _check_samples(samples, 1)
    nodes = oracle.random_nodes(_rng(seed), samples)
    return float(oracle.degrees(nodes).mean())


def estimate_k_min(oracle: AccessOracle, samples: int, seed=None, census: bool = False) -> int:
    """Smallest degree seen in the sample. Never below the true minimum, often above it
    for small samples."""
    if census:
        return int(oracle.census_degrees().min())
    _check_samples(samples, 1)
    nodes = oracle.random_nodes(_rng(seed), samples)
    return int(oracle.degrees(nodes).min())


def count_collisions(ids: np.ndarray) -> int:
    """Number of unordered pairs of draws that hit the same id."""
    _, counts = np.unique(ids, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def estimate_n_collisions(oracle: AccessOracle, samples: int, seed=None, census: bool = False) -> float:
    """Birthday-paradox estimate ``r (r - 1) / (2 c)`` of the node count.

    ``r`` uniform draws with ``c`` colliding pairs. Returns ``math.inf``
    when no collision occurred (sample too small for the population).
    """
    if census:
        return float(oracle.census_node_count)
    _check_samples(samples, 2)
    c = count_collisions(oracle.random_nodes(_rng(seed), samples))
    if c == 0:
        return math.inf
    return samples * (samples - 1) / (2 * c)


@dataclass(frozen=True)
class ParamEstimate:
    n_hat: float
    d_avg_hat: float
    k_min_hat: int
    sample_size: int
    rng_seed: int | None
    mode: str
    k_max: int | None = None
    estimator_note: str = ""

    @property
    def insufficient_collisions(self) -> bool:
        return math.isinf(self.n_hat)

    def record(self) -> str:
        """One-line ``key=value`` rendering."""
        return (f"n_hat={self.n_hat:.6g} d_avg_hat={self.d_avg_hat:.6g} "
                f"k_min_hat={self.k_min_hat} samples={self.sample_size} mode={self.mode}")


SAMPLED_NOTE = ("uniform-sample mean (d_avg), sample minimum (k_min), "
                "birthday collisions (n)")


def estimate_params(oracle: AccessOracle, samples: int, seed: int | None = None,
                    census: bool = False) -> ParamEstimate:
    """Estimate (n, d_avg, k_min); the collision and degree samples use separate streams."""
    if census:
        return ParamEstimate(
            n_hat=estimate_n_collisions(oracle, 0, census=True),
            d_avg_hat=estimate_avg_degree(oracle, 0, census=True),
            k_min_hat=estimate_k_min(oracle, 0, census=True),
            sample_size=oracle.census_node_count,
            rng_seed=None,
            mode="census",
            k_max=oracle.census_k_max,
            estimator_note="full enumeration",
        )
    _check_samples(samples, 2)
    n_stream, degree_stream = np.random.SeedSequence(seed).spawn(2)
    # One shared degree sample keeps k_min_hat <= d_avg_hat.
    nodes = oracle.random_nodes(np.random.default_rng(degree_stream), samples)
    degs = oracle.degrees(nodes)
    return ParamEstimate(
        n_hat=estimate_n_collisions(oracle, samples, np.random.default_rng(n_stream)),
        d_avg_hat=float(degs.mean()),
        k_min_hat=int(degs.min()),
        sample_size=samples,
        rng_seed=seed,
        mode="sampled",
        estimator_note=SAMPLED_NOTE,
    )
