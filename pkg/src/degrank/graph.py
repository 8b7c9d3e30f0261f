"""Immutable undirected graphs, degree statistics and exact degree ranking.

Graphs are stored in compressed sparse row form: the neighbours of node
``u`` are ``indices[indptr[u]:indptr[u + 1]]``, sorted ascending. Node ids
are always dense (``0..n-1``); the integer ids found in an input file are
kept in ``labels`` so results can be reported in the caller's id space.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from degrank.errors import ConfigError, EdgeListParseError

logger = logging.getLogger(__name__)

META_PREFIX = "# meta:"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _canonical_pairs(n: int, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Return unique (lo, hi) pairs plus the number of self-loops and duplicates dropped."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    loops = u == v
    lo = np.minimum(u[~loops], v[~loops])
    hi = np.maximum(u[~loops], v[~loops])
    keys = np.unique(lo * max(n, 1) + hi)
    pairs = np.stack([keys // max(n, 1), keys % max(n, 1)], axis=1)
    dups = int((~loops).sum()) - len(keys)
    return pairs, int(loops.sum()), dups


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with dense integer node ids.

    Build instances with :meth:`from_edges`, :func:`load_edge_list` or a
    generator; the constructor expects an already canonical CSR layout.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "indptr", _frozen(self.indptr))
        object.__setattr__(self, "indices", _frozen(self.indices))
        object.__setattr__(self, "labels", _frozen(self.labels))
        object.__setattr__(self, "degrees", _frozen(np.diff(self.indptr)))
        if len(self.labels) != self.node_count:
            raise ValueError("labels must have one entry per node")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray,
                   labels: np.ndarray | None = None) -> "Graph":
        """Build a graph on nodes ``0..n-1``; self-loops and repeated edges are dropped."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        pairs, _, _ = _canonical_pairs(n, arr[:, 0], arr[:, 1])
        return cls._from_pairs(n, pairs, labels)

    @classmethod
    def _from_pairs(cls, n: int, pairs: np.ndarray, labels: np.ndarray | None) -> "Graph":
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        return cls(indptr, cols[order], np.asarray(labels))

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @property
    def adjacency(self) -> list[np.ndarray]:
        return [self.neighbors(u) for u in range(self.node_count)]

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges ``(u, v)`` with ``u < v``, in row order."""
        rows = np.repeat(np.arange(self.node_count), self.degrees)
        keep = rows < self.indices
        return np.stack([rows[keep], self.indices[keep]], axis=1)

    def canonical(self) -> "Graph":
        """Relabel so that internal ids follow ascending label order."""
        order = np.argsort(self.labels, kind="stable")
        position = np.empty_like(order)
        position[order] = np.arange(self.node_count)
        e = position[self.edges()]
        pairs, _, _ = _canonical_pairs(self.node_count, e[:, 0], e[:, 1])
        return Graph._from_pairs(self.node_count, pairs, self.labels[order])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.labels, other.labels))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


@dataclass(frozen=True)
class DegreeSequence:
    degrees: np.ndarray
    k_min: int
    k_max: int
    d_avg: float

    @property
    def n(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class RankTable:
    """Per-node ranks; ``policy`` is ``"competition"`` or ``"ordinal"``."""

    rank: np.ndarray
    policy: str = "competition"

    def __len__(self) -> int:
        return len(self.rank)


def _require_nodes(g: Graph) -> None:
    if g.node_count == 0:
        raise ConfigError("graph has no nodes")


def degree_sequence(g: Graph) -> DegreeSequence:
    _require_nodes(g)
    d = g.degrees
    return DegreeSequence(d, int(d.min()), int(d.max()), int(d.sum()) / g.node_count)


def competition_ranks(degrees: np.ndarray) -> np.ndarray:
    """rank(u) = 1 + #{v : deg(v) > deg(u)}, by binary search on the sorted degrees."""
    d = np.asarray(degrees)
    s = np.sort(d)
    return len(d) - np.searchsorted(s, d, side="right") + 1


def ordinal_rank_array(degrees: np.ndarray) -> np.ndarray:
    """Position in the descending degree order; ties broken by ascending node id."""
    d = np.asarray(degrees)
    order = np.argsort(-d, kind="stable")
    r = np.empty(len(d), dtype=np.int64)
    r[order] = np.arange(1, len(d) + 1)
    return r


def exact_ranks(g: Graph) -> RankTable:
    """Competition ("1224") degree ranking of every node."""
    _require_nodes(g)
    return RankTable(competition_ranks(g.degrees), "competition")


def ordinal_ranks(g: Graph) -> RankTable:
    """Ranking obtained by sorting the nodes by degree and numbering them 1..n."""
    _require_nodes(g)
    return RankTable(ordinal_rank_array(g.degrees), "ordinal")


def _open_text(source, mode: str):
    if isinstance(source, (str, os.PathLike)):
        return open(source, mode, encoding="utf-8"), True
    return source, False


def load_edge_list(source: IO[str] | str | os.PathLike) -> Graph:
    """Parse whitespace-separated ``u v`` lines into a :class:`Graph`.

    Blank lines and lines starting with ``#`` are skipped. Node ids are
    compacted to ``0..n-1`` in order of first appearance and the original
    ids are kept in ``Graph.labels``. Self-loops and repeated edges are
    dropped; how many is logged at WARNING level.
    """
    stream, owned = _open_text(source, "r")
    ids: dict[int, int] = {}
    us: list[int] = []
    vs: list[int] = []
    try:
        for lineno, line in enumerate(stream, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            tokens = text.split()
            if len(tokens) != 2:
                raise EdgeListParseError(f"expected 2 tokens, got {len(tokens)}", lineno)
            try:
                a, b = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise EdgeListParseError(f"non-integer node id in {text!r}", lineno) from None
            us.append(ids.setdefault(a, len(ids)))
            vs.append(ids.setdefault(b, len(ids)))
    finally:
        if owned:
            stream.close()
    if not us:
        raise EdgeListParseError("edge list is empty")
    n = len(ids)
    pairs, loops, dups = _canonical_pairs(n, np.array(us), np.array(vs))
    if loops or dups:
        logger.warning("dropped %d self-loop(s) and %d duplicate edge(s)", loops, dups)
    labels = np.fromiter(ids.keys(), dtype=np.int64, count=n)
    return Graph._from_pairs(n, pairs, labels)


def write_edge_list(g: Graph, dest: IO[str] | str | os.PathLike, meta: dict | None = None) -> None:
    """Write ``g`` as ``label_u label_v`` lines, optionally behind a ``# meta:`` JSON header."""
    stream, owned = _open_text(dest, "w")
    try:
        if meta is not None:
            stream.write(f"{META_PREFIX} {json.dumps(meta, sort_keys=True)}\n")
        lab = g.labels[g.edges()]
        stream.writelines(f"{a} {b}\n" for a, b in lab.tolist())
    finally:
        if owned:
            stream.close()


def read_meta(source: IO[str] | str | os.PathLike) -> dict | None:
    """Return the ``# meta:`` header of an edge-list file, or None."""
    stream, owned = _open_text(source, "r")
    try:
        for line in stream:
            if line.startswith(META_PREFIX):
                return json.loads(line[len(META_PREFIX):])
            if line.strip() and not line.startswith("#"):
                return None
    finally:
        if owned:
            stream.close()
    return None
