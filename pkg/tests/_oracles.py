"""Independent reference implementations used only by the tests."""

import numpy as np


def pairwise_ranks(degrees):
    """O(n^2) rank straight from the definition: 1 + #{v != u : deg(v) > deg(u)}."""
    d = list(degrees)
    return np.array([1 + sum(1 for j, dv in enumerate(d) if j != i and dv > du)
                     for i, du in enumerate(d)])


def random_edges(rng, n, p):
    """Erdős–Rényi G(n, p) edge array."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return np.stack([iu[keep], ju[keep]], axis=1)


def sample_power_law_degrees(rng, size, k_min, k_max, gamma):
    """Integer degrees from the continuous density x**-gamma on [k_min - 1/2, k_max + 1/2].

    Inverse-CDF draw of the continuous variable, then rounding to the nearest
    integer, so P(deg = k) is the density's mass on (k - 1/2, k + 1/2).
    """
    e = 1.0 - gamma
    a = (k_min - 0.5) ** e
    b = (k_max + 0.5) ** e
    u = rng.random(size)
    x = (a - u * (a - b)) ** (1.0 / e)
    return np.floor(x + 0.5).astype(np.int64)


def monte_carlo_ranks(rng, n, k_values, k_min, k_max, gamma, trials, chunk=2000):
    """Rank samples: 1 + number of n - 1 i.i.d. degrees exceeding k, per k and trial."""
    out = {k: np.empty(trials) for k in k_values}
    done = 0
    while done < trials:
        t = min(chunk, trials - done)
        degs = sample_power_law_degrees(rng, (t, n - 1), k_min, k_max, gamma)
        for k in k_values:
            out[k][done:done + t] = 1 + (degs > k).sum(axis=1)
        done += t
    return out


def pairwise_ordinal_ranks(degrees):
    """1 + #{strictly larger degrees} + #{equal degrees at a smaller node id}."""
    d = list(degrees)
    return np.array([1 + sum(1 for j, dv in enumerate(d) if dv > du or (dv == du and j < i))
                     for i, du in enumerate(d)])
