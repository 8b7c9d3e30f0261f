"""Seeded Barabási–Albert preferential-attachment generator."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

import numpy as np

from degrank.errors import ConfigError
from degrank.graph import Graph

RNG_ALGORITHM = "MT19937 (Python random.Random)"


@dataclass(frozen=True)
class BaConfig:
    """Parameters of one BA run.

    ``m`` is the number of edges each arriving node creates, ``n0`` the
    number of initially disconnected seed nodes (defaults to ``m``).
    """

    n: int
    m: int
    n0: int | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.n0 is None:
            object.__setattr__(self, "n0", self.m)
        if not 1 <= self.m <= self.n0 < self.n:
            raise ConfigError(
                f"BA config requires 1 <= m <= n0 < n, got m={self.m}, n0={self.n0}, n={self.n}")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigError(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed}")

    def metadata(self) -> dict:
        meta = asdict(self)
        meta.update(model="barabasi-albert", rng=RNG_ALGORITHM)
        return meta


def ba_generate(cfg: BaConfig) -> Graph:
    """Grow a BA graph with ``cfg.n`` nodes and ``m * (n - n0)`` edges.

    The seed nodes start with degree zero, so the first arriving node picks
    its ``m`` targets uniformly among them. Every later node draws targets
    from a pool holding each node once per incident edge end, which makes a
    uniform draw degree-proportional; repeats within one node's draws are
    rejected so the targets are distinct.
    """
    n, m, n0 = cfg.n, cfg.m, cfg.n0
    rng = random.Random(cfg.rng_seed)
    randrange = rng.randrange

    src = np.empty(m * (n - n0), dtype=np.int64)
    dst = np.empty_like(src)
    first = rng.sample(range(n0), m)
    src[:m] = n0
    dst[:m] = first
    pool = []
    for t in first:
        pool.append(t)
        pool.append(n0)

    pos = m
    for node in range(n0 + 1, n):
        size = len(pool)
        targets: list[int] = []
        while len(targets) < m:
            t = pool[randrange(size)]
            if t not in targets:
                targets.append(t)
        src[pos:pos + m] = node
        dst[pos:pos + m] = targets
        pos += m
        pool.extend(targets)
        pool.extend([node] * m)

    return Graph.from_edges(n, np.stack([src, dst], axis=1))
