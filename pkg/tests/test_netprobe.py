import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from degrank import (
    AccessOracle,
    BaConfig,
    ConfigError,
    Graph,
    ba_generate,
    degree_sequence,
    estimate_avg_degree,
    estimate_k_min,
    estimate_n_collisions,
    estimate_params,
)
from degrank.netprobe import count_collisions


@pytest.fixture(scope="module")
def ba_graph():
    return ba_generate(BaConfig(10_000, 10, rng_seed=42))


@pytest.fixture
def star():
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)])


def test_census_mode_is_exact(ba_graph):
    ds = degree_sequence(ba_graph)
    oracle = AccessOracle(ba_graph)
    assert estimate_avg_degree(oracle, 0, census=True) == ds.d_avg
    assert estimate_k_min(oracle, 0, census=True) == ds.k_min
    assert estimate_n_collisions(oracle, 0, census=True) == ba_graph.node_count


def test_star_average_converges(star):
    est = estimate_avg_degree(AccessOracle(star), 200_000, seed=1)
    assert est == pytest.approx(8 / 5, abs=0.01)


def test_query_counter_is_exact(ba_graph):
    oracle = AccessOracle(ba_graph)
    estimate_avg_degree(oracle, 137, seed=3)
    assert oracle.query_counter["random_node"] == 137
    assert oracle.query_counter["degree"] == 137
    assert oracle.query_counter["neighbors"] == 0
    oracle.neighbors(0)
    oracle.random_node(np.random.default_rng(0))
    oracle.degree(0)
    assert dict(oracle.query_counter) == {"random_node": 138, "degree": 138, "neighbors": 1}


def test_query_counter_exact_under_threads(ba_graph):
    oracle = AccessOracle(ba_graph)
    with ThreadPoolExecutor(8) as pool:
        list(pool.map(lambda s: estimate_avg_degree(oracle, 50, seed=s), range(64)))
    assert oracle.query_counter["random_node"] == 64 * 50
    assert oracle.query_counter["degree"] == 64 * 50


def test_seeded_estimates_are_reproducible(ba_graph):
    a = estimate_avg_degree(AccessOracle(ba_graph), 300, seed=9)
    b = estimate_avg_degree(AccessOracle(ba_graph), 300, seed=9)
    assert a == b


@pytest.mark.parametrize("fn, bad", [
    (estimate_avg_degree, 0), (estimate_k_min, 0), (estimate_n_collisions, 1),
])
def test_too_few_samples(ba_graph, fn, bad):
    with pytest.raises(ConfigError):
        fn(AccessOracle(ba_graph), bad, seed=0)


def test_avg_degree_error_shrinks_with_sample_size(ba_graph):
    truth = degree_sequence(ba_graph).d_avg
    quartiles = []
    for size in (50, 200, 800):
        errs = [abs(estimate_avg_degree(AccessOracle(ba_graph), size, seed=s) - truth)
                for s in range(300)]
        quartiles.append(np.percentile(errs, [25, 50, 75]))
    q = np.array(quartiles)
    assert np.all(np.diff(q, axis=0) < 0)


def test_k_min_never_undershoots(ba_graph):
    oracle = AccessOracle(ba_graph)
    for s in range(50):
        assert estimate_k_min(oracle, 5, seed=s) >= 10


def test_k_min_with_moderate_sample(ba_graph):
    oracle = AccessOracle(ba_graph)
    hits = sum(estimate_k_min(oracle, 200, seed=s) == 10 for s in range(100))
    assert hits >= 99


def test_k_min_single_draw_overestimates():
    # a graph where the only reachable draw has degree 17
    g = Graph.from_edges(18, [(0, i) for i in range(1, 18)])
    oracle = AccessOracle(g)
    draws = [estimate_k_min(oracle, 1, seed=s) for s in range(200)]
    assert set(draws) == {1, 17}
    assert 17 in draws


def test_collision_count():
    assert count_collisions(np.array([1, 2, 3])) == 0
    assert count_collisions(np.array([4, 4, 4, 2, 2])) == 3 + 1


def test_collision_estimate_single_node():
    g = Graph.from_edges(1, [])
    assert estimate_n_collisions(AccessOracle(g), 2, seed=0) == 1.0


def test_collision_estimate_degenerate_regime():
    g = Graph.from_edges(10**6, [])
    oracle = AccessOracle(g)
    results = [estimate_n_collisions(oracle, 10, seed=s) for s in range(20)]
    assert sum(math.isinf(r) for r in results) >= 19


def test_param_estimate_record_and_invariants(ba_graph):
    est = estimate_params(AccessOracle(ba_graph), 1000, seed=5)
    assert est.mode == "sampled" and est.sample_size == 1000
    assert 1 <= est.k_min_hat <= est.d_avg_hat
    assert math.isfinite(est.n_hat) and est.n_hat >= 1
    rec = est.record()
    for key in ("n_hat=", "d_avg_hat=", "k_min_hat=", "samples=1000", "mode=sampled"):
        assert key in rec
    census = estimate_params(AccessOracle(ba_graph), 0, census=True)
    assert census.mode == "census" and census.n_hat == 10_000 and census.k_max is not None


def test_param_estimate_flags_missing_collisions():
    g = Graph.from_edges(10**6, [])
    est = estimate_params(AccessOracle(g), 10, seed=0)
    assert est.insufficient_collisions
