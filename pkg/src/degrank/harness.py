"""Experiment driver: compare estimated ranks with exact ones on whole graphs.

One trial builds (or loads) a graph, obtains the model parameters either
by census or by sampling, ranks every node exactly and with the model, and
aggregates the absolute rank errors and the band coverage.

Two notions of "actual rank" are supported. ``competition`` gives tied
nodes the best shared rank, matching the model's definition of rank.
``ordinal`` sorts the nodes by degree and numbers them 1..n (ties broken by
node id), which is how the published error table is produced; it is the
default for that reason.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from degrank.errors import ConfigError, DegrankError, DomainError
from degrank.generators import BaConfig, ba_generate
from degrank.graph import Graph, competition_ranks, load_edge_list, ordinal_rank_array, read_meta
from degrank.netprobe import AccessOracle, ParamEstimate, estimate_params
from degrank.rank_model import EXACT_BINOMIAL, NetworkParams, rank_arrays, variance_mode

logger = logging.getLogger(__name__)

ORDINAL = "ordinal"
COMPETITION = "competition"
HIGH_DEGREE_OFFSET = 15

NODE_COLUMNS = ("node", "degree", "actual_rank", "expected_rank", "band_low", "band_high")
SUMMARY_COLUMNS = ("n", "m", "seed", "gamma", "avg_abs_error", "std_error",
                   "coverage_all", "coverage_highdeg")


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run. Exactly one of ``ba`` (``(n, m)``) and ``graph_path`` must be set.

    ``sampled`` is a sample size; when None the parameters come from a
    census of the graph. ``degree_floor`` defaults to ``k_min + 15``.
    """

    seeds: tuple[int, ...]
    ba: tuple[int, int] | None = None
    graph_path: Path | None = None
    n0: int | None = None
    sampled: int | None = None
    variance_mode: str = EXACT_BINOMIAL
    band_width: float = 2.0
    degree_floor: int | None = None
    actual_ranking: str = ORDINAL

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if self.graph_path is not None:
            object.__setattr__(self, "graph_path", Path(self.graph_path))
        if not self.seeds:
            raise ConfigError("at least one trial seed is required")
        if (self.ba is None) == (self.graph_path is None):
            raise ConfigError("exactly one graph source (ba or graph_path) is required")
        if self.sampled is not None and self.sampled < 2:
            raise ConfigError(f"sample size must be at least 2, got {self.sampled}")
        if self.actual_ranking not in (ORDINAL, COMPETITION):
            raise ConfigError(f"actual_ranking must be {ORDINAL!r} or {COMPETITION!r}")
        if self.band_width <= 0:
            raise ConfigError("band_width must be positive")
        try:
            object.__setattr__(self, "variance_mode", variance_mode(self.variance_mode))
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        if self.ba is not None:
            n, m = self.ba
            BaConfig(n, m, self.n0)  # validates


@dataclass(frozen=True)
class NodeRows:
    """Per-node columns, all aligned by internal node id."""

    node: np.ndarray
    degree: np.ndarray
    actual_rank: np.ndarray
    expected_rank: np.ndarray
    band_low: np.ndarray
    band_high: np.ndarray

    def __len__(self) -> int:
        return len(self.node)


@dataclass(frozen=True)
class Coverage:
    fraction: float
    cohort: int

    @property
    def empty(self) -> bool:
        return self.cohort == 0


@dataclass(frozen=True)
class ExperimentReport:
    seed: int
    m: int | None
    params: NetworkParams
    estimate: ParamEstimate
    rows: NodeRows
    avg_abs_error: float
    std_error: float
    coverage_all: Coverage
    coverage_highdeg: Coverage
    degree_floor: int
    clamp_count: int
    variance_mode: str
    actual_ranking: str
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.rows)

    def summary_row(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "seed": self.seed,
            "gamma": self.params.gamma,
            "avg_abs_error": self.avg_abs_error,
            "std_error": self.std_error,
            "coverage_all": self.coverage_all.fraction,
            "coverage_highdeg": self.coverage_highdeg.fraction,
        }


def error_stats(actual, expected) -> tuple[float, float]:
    """Mean and population standard deviation of ``|actual - expected|``."""
    a = np.asarray(actual, dtype=float)
    e = np.asarray(expected, dtype=float)
    if a.shape != e.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {e.shape}")
    if a.size == 0:
        raise ValueError("need at least one rank")
    err = np.abs(a - e)
    return float(err.mean()), float(err.std())


def band_coverage(rows: NodeRows, degree_floor: int) -> Coverage:
    """Share of nodes with degree >= ``degree_floor`` whose actual rank lies in their band.

    An empty cohort counts as fully covered.
    """
    mask = rows.degree >= degree_floor
    cohort = int(mask.sum())
    if cohort == 0:
        return Coverage(1.0, 0)
    actual = rows.actual_rank[mask]
    inside = (actual >= rows.band_low[mask]) & (actual <= rows.band_high[mask])
    return Coverage(float(inside.mean()), cohort)


def decile_errors(rows: NodeRows) -> tuple[float, float]:
    """Mean absolute error over the top and bottom tenth of nodes by degree."""
    order = np.argsort(-rows.degree, kind="stable")
    size = max(1, len(rows) // 10)
    err = np.abs(rows.actual_rank - rows.expected_rank)
    return float(err[order[:size]].mean()), float(err[order[-size:]].mean())


def _params_for(graph: Graph, cfg: ExperimentConfig, seed: int) -> tuple[NetworkParams, ParamEstimate]:
    oracle = AccessOracle(graph)
    if cfg.sampled is None:
        est = estimate_params(oracle, 0, census=True)
    else:
        est = estimate_params(oracle, cfg.sampled, seed)
        if est.insufficient_collisions:
            raise ConfigError(f"no collisions among {cfg.sampled} draws; "
                              "increase the sample size to estimate n")
    n = int(round(est.n_hat))
    if est.d_avg_hat <= est.k_min_hat:
        raise ConfigError(
            f"degenerate degree distribution (k_min={est.k_min_hat}, d_avg={est.d_avg_hat:.6g}): "
            "all degrees equal, no power-law exponent can be fitted")
    try:
        params = NetworkParams.from_estimates(n, est.k_min_hat, est.d_avg_hat, k_max=est.k_max)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    return params, est


def _graph_for(cfg: ExperimentConfig, seed: int,
               graph: Graph | None = None) -> tuple[Graph, int | None, dict]:
    if cfg.ba is not None:
        n, m = cfg.ba
        bcfg = BaConfig(n, m, cfg.n0, seed)
        return ba_generate(bcfg), m, bcfg.metadata()
    meta = read_meta(cfg.graph_path) or {}
    if graph is None:
        graph = load_edge_list(cfg.graph_path)
    return graph, meta.get("m"), {"source": os.fspath(cfg.graph_path), **meta}


def run_experiment(cfg: ExperimentConfig, seed: int | None = None,
                   graph: Graph | None = None) -> ExperimentReport:
    """Run one trial (``seed`` defaults to the first configured seed).

    ``graph`` lets callers reuse an already loaded copy of ``cfg.graph_path``.
    """
    seed = cfg.seeds[0] if seed is None else seed
    graph, m, graph_meta = _graph_for(cfg, seed, graph)
    params, est = _params_for(graph, cfg, seed)
    degrees = graph.degrees
    if cfg.actual_ranking == ORDINAL:
        actual = ordinal_rank_array(degrees)
    else:
        actual = competition_ranks(degrees)
    arr = rank_arrays(degrees, params, cfg.variance_mode, cfg.band_width)
    rows = NodeRows(graph.labels, degrees, actual, arr.expected, arr.band_low, arr.band_high)
    avg, std = error_stats(actual, arr.expected)
    floor = params.k_min + HIGH_DEGREE_OFFSET if cfg.degree_floor is None else cfg.degree_floor
    if arr.clamp_count:
        logger.info("seed %d: clamped %d negative variance(s) to zero", seed, arr.clamp_count)
    meta = {
        "graph": graph_meta,
        "param_mode": est.mode,
        "param_estimators": est.estimator_note,
        "estimate": {"n_hat": est.n_hat, "d_avg_hat": est.d_avg_hat,
                     "k_min_hat": est.k_min_hat, "samples": est.sample_size},
        "estimator_rng": "PCG64 (numpy.random.default_rng)",
        "variance_clamps": arr.clamp_count,
    }
    return ExperimentReport(
        seed=seed,
        m=m,
        params=params,
        estimate=est,
        rows=rows,
        avg_abs_error=avg,
        std_error=std,
        coverage_all=band_coverage(rows, 0),
        coverage_highdeg=band_coverage(rows, floor),
        degree_floor=floor,
        clamp_count=arr.clamp_count,
        variance_mode=cfg.variance_mode,
        actual_ranking=cfg.actual_ranking,
        meta=meta,
    )


def run_trials(cfg: ExperimentConfig, jobs: int = 1) -> list[ExperimentReport]:
    """One report per configured seed, in seed order; ``jobs > 1`` runs trials in processes."""
    graph = load_edge_list(cfg.graph_path) if cfg.graph_path is not None else None
    if jobs <= 1 or len(cfg.seeds) == 1:
        return [run_experiment(cfg, s, graph) for s in cfg.seeds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_experiment, [cfg] * len(cfg.seeds), cfg.seeds,
                             [graph] * len(cfg.seeds)))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.6g}"


def _write_nodes(report: ExperimentReport, path: Path) -> None:
    r = report.rows
    order = np.argsort(r.actual_rank, kind="stable")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(NODE_COLUMNS)
        cols = (r.node[order].tolist(), r.degree[order].tolist(), r.actual_rank[order].tolist(),
                r.expected_rank[order].tolist(), r.band_low[order].tolist(),
                r.band_high[order].tolist())
        for node, deg, act, exp, lo, hi in zip(*cols):
            w.writerow((node, deg, act, f"{exp:.6g}", f"{lo:.6g}", f"{hi:.6g}"))


def nodes_filename(report: ExperimentReport, multiple: bool) -> str:
    return f"nodes_seed{report.seed}.csv" if multiple else "nodes.csv"


def emit_csv(reports: ExperimentReport | Sequence[ExperimentReport], out_dir: str | os.PathLike,
             config: ExperimentConfig | None = None) -> list[Path]:
    """Write node tables, ``summary.csv`` and ``meta.json`` into ``out_dir``.

    A single trial gets ``nodes.csv``; several trials get one
    ``nodes_seed<S>.csv`` each. Returns the paths written.
    """
    if isinstance(reports, ExperimentReport):
        reports = [reports]
    if not reports:
        raise ConfigError("no experiment report to write")
    out = Path(out_dir)
    written: list[Path] = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        multiple = len(reports) > 1
        for rep in reports:
            path = out / nodes_filename(rep, multiple)
            _write_nodes(rep, path)
            written.append(path)
        path = out / "summary.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SUMMARY_COLUMNS)
            for rep in reports:
                row = rep.summary_row()
                w.writerow([_fmt(row[c]) for c in SUMMARY_COLUMNS])
        written.append(path)
        path = out / "meta.json"
        meta = {
            "config": _config_json(config) if config is not None else None,
            "variance_mode": reports[0].variance_mode,
            "actual_ranking": reports[0].actual_ranking,
            "trials": [{"seed": r.seed, "degree_floor": r.degree_floor,
                        "gamma": r.params.gamma, **r.meta} for r in reports],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
        written.append(path)
    except OSError as exc:
        raise DegrankError(f"cannot write results to {exc.filename or out}: {exc.strerror}") from exc
    return written


def _config_json(cfg: ExperimentConfig) -> dict:
    d = asdict(cfg)
    d["seeds"] = list(cfg.seeds)
    return d


@dataclass(frozen=True)
class Table1Row:
    n: int
    trials: int
    avg_abs_error: float
    std_error: float

    @property
    def ratio(self) -> float:
        return self.avg_abs_error / self.n


def table1_suite(sizes: Sequence[int], trials: int, m: int = 10, first_seed: int = 0,
                 actual_ranking: str = ORDINAL, jobs: int = 1) -> list[Table1Row]:
    """Average error and its spread per network size over BA(n, m) trials with census params.

    Seeds are ``first_seed .. first_seed + trials - 1`` for every size.
    """
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    if not sizes:
        raise ConfigError("at least one size is required")
    seeds = tuple(range(first_seed, first_seed + trials))
    table = []
    for n in sizes:
        cfg = ExperimentConfig(seeds=seeds, ba=(n, m), actual_ranking=actual_ranking)
        reports = run_trials(cfg, jobs)
        table.append(Table1Row(
            n=n,
            trials=trials,
            avg_abs_error=float(np.mean([r.avg_abs_error for r in reports])),
            std_error=float(np.mean([r.std_error for r in reports])),
        ))
    return table


def write_table1(table: Sequence[Table1Row], out_dir: str | os.PathLike) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        path = out / "table1.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("n", "trials", "avg_abs_error", "std_error", "error_ratio"))
            for row in table:
                w.writerow((row.n, row.trials, _fmt(row.avg_abs_error), _fmt(row.std_error),
                            _fmt(row.ratio)))
    except OSError as exc:
        raise DegrankError(f"cannot write results to {exc.filename or out}: {exc.strerror}") from exc
    return path
