import numpy as np
import pytest

from degrank import BaConfig, ConfigError, ba_generate, degree_sequence
from degrank.generators import RNG_ALGORITHM


def test_edge_count_by_construction():
    g = ba_generate(BaConfig(n=100, m=3, n0=3, rng_seed=7))
    assert g.node_count == 100
    assert g.edge_count == 3 * (100 - 3)


def test_first_arrival_connects_to_all_seeds():
    g = ba_generate(BaConfig(n=11, m=10, n0=10))
    assert g.degrees.tolist() == [1] * 10 + [10]
    assert g.neighbors(10).tolist() == list(range(10))


def test_n0_defaults_to_m():
    assert BaConfig(n=50, m=4).n0 == 4


@pytest.mark.parametrize("kwargs", [
    dict(n=10, m=0),
    dict(n=10, m=3, n0=2),
    dict(n=5, m=5),
    dict(n=10, m=2, rng_seed=-1),
    dict(n=10, m=2, rng_seed=2**64),
])
def test_invalid_config_rejected(kwargs):
    with pytest.raises(ConfigError):
        BaConfig(**kwargs)


def test_determinism_and_seed_sensitivity():
    a = ba_generate(BaConfig(2000, 5, rng_seed=123))
    b = ba_generate(BaConfig(2000, 5, rng_seed=123))
    c = ba_generate(BaConfig(2000, 5, rng_seed=124))
    assert a == b
    assert a != c


def test_metadata_pins_rng():
    meta = BaConfig(100, 3, rng_seed=9).metadata()
    assert meta == {"n": 100, "m": 3, "n0": 3, "rng_seed": 9,
                    "model": "barabasi-albert", "rng": RNG_ALGORITHM}


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_structure_of_large_graph(seed):
    n, m = 10_000, 10
    g = ba_generate(BaConfig(n, m, rng_seed=seed))
    # no duplicate targets: deduplication would have lowered the edge count
    assert g.edge_count == m * (n - m)
    assert g.degrees[m:].min() == m
    assert degree_sequence(g).k_min == m
    heavy = np.mean(g.degrees > 10 * m)
    assert 0 < heavy < 0.05


def test_arrivals_connect_only_to_older_nodes():
    g = ba_generate(BaConfig(500, 3, rng_seed=5))
    for u in range(4, 500):
        nb = g.neighbors(u)
        assert (nb < u).sum() == 3


def test_attachment_is_degree_proportional():
    # m = n0 = 1. Node 1 joins node 0; node 2 picks 0 or 1 evenly; enumerating
    # both cases gives node 3 the target law {0: 3/8, 1: 3/8, 2: 1/4}.
    trials = 8000
    counts = np.zeros(3)
    for seed in range(trials):
        g = ba_generate(BaConfig(n=4, m=1, rng_seed=seed))
        counts[g.neighbors(3)[0]] += 1
    expected = np.array([3 / 8, 3 / 8, 1 / 4])
    se = np.sqrt(expected * (1 - expected) / trials)
    assert np.all(np.abs(counts / trials - expected) < 4 * se)


def _ccdf_exponent(degrees, k_lo, k_hi):
    """Power-law exponent from a least-squares fit of the log-log CCDF on [k_lo, k_hi]."""
    ks = np.arange(k_lo, k_hi + 1)
    ccdf = np.array([(degrees >= k).mean() for k in ks])
    slope = np.polyfit(np.log(ks), np.log(ccdf), 1)[0]
    return 1.0 - slope


@pytest.mark.parametrize("seed", range(5))
def test_tail_exponent_close_to_three(seed):
    g = ba_generate(BaConfig(10_000, 10, rng_seed=seed))
    gamma = _ccdf_exponent(g.degrees, 10, 100)
    assert 2.5 <= gamma <= 3.2
