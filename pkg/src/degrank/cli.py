"""Command-line entry point: ``degrank <subcommand> ...``.

Exit status is 0 on success, 2 on configuration or input errors and 1 on
any other failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from degrank.errors import ConfigError, DegrankError, DomainError, EdgeListParseError
from degrank.generators import BaConfig, ba_generate
from degrank.graph import load_edge_list, write_edge_list
from degrank.harness import (
    COMPETITION,
    ORDINAL,
    ExperimentConfig,
    emit_csv,
    run_trials,
    table1_suite,
    write_table1,
)
from degrank.netprobe import AccessOracle, estimate_params
from degrank.rank_model import NetworkParams, expected_rank

log = logging.getLogger("degrank")

EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ba_spec(text: str) -> tuple[int, int]:
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected 'n,m', got {text!r}")
    return values[0], values[1]


def cmd_generate(args) -> None:
    cfg = BaConfig(args.nodes, args.m, args.n0, args.seed)
    write_edge_list(ba_generate(cfg), args.out, meta=cfg.metadata())


def cmd_estimate(args) -> None:
    graph = load_edge_list(args.graph)
    est = estimate_params(AccessOracle(graph), args.samples, args.seed, census=args.census)
    print(est.record())


def cmd_rank(args) -> None:
    params = NetworkParams.from_estimates(args.n, args.kmin, args.davg)
    est = expected_rank(args.degree, params, args.variance_mode, args.band_width)
    low, high = est.sigma_band
    print(f"p={est.p:.6g} expected_rank={est.expected_rank:.6g} variance={est.variance:.6g} "
          f"band_low={low:.6g} band_high={high:.6g} gamma={params.gamma:.6g}")


def cmd_experiment(args) -> None:
    cfg = ExperimentConfig(
        seeds=args.seeds,
        ba=args.ba,
        graph_path=args.graph,
        n0=args.n0,
        sampled=args.sampled,
        variance_mode=args.variance_mode,
        band_width=args.band_width,
        degree_floor=args.degree_floor,
        actual_ranking=args.actual_ranking,
    )
    reports = run_trials(cfg, args.jobs)
    emit_csv(reports, args.out, cfg)
    for r in reports:
        print(f"seed={r.seed} n={r.n} gamma={r.params.gamma:.6g} "
              f"avg_abs_error={r.avg_abs_error:.6g} std_error={r.std_error:.6g} "
              f"coverage_highdeg={r.coverage_highdeg.fraction:.6g}")


def cmd_table1(args) -> None:
    table = table1_suite(args.sizes, args.trials, m=args.m, first_seed=args.first_seed,
                         actual_ranking=args.actual_ranking, jobs=args.jobs)
    write_table1(table, args.out)
    for row in table:
        print(f"n={row.n} avg_abs_error={row.avg_abs_error:.6g} "
              f"std_error={row.std_error:.6g} ratio={row.ratio:.4f}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degrank", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a Barabási–Albert graph as an edge list")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="edges per arriving node")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n0", type=int, default=None, help="seed nodes (default: m)")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("estimate-params", help="estimate n, d_avg and k_min by sampling")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--census", action="store_true", help="enumerate instead of sampling")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("rank", help="expected rank of one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmin", type=int, required=True)
    p.add_argument("--davg", type=float, required=True)
    p.add_argument("--variance-mode", choices=("exact", "paper"), default="exact")
    p.add_argument("--band-width", type=float, default=2.0, help="band half-width in sigmas")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("experiment", help="compare estimated and exact ranks")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", type=Path)
    src.add_argument("--ba", type=_ba_spec, metavar="N,M")
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--n0", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--sampled", type=int, default=None, metavar="S",
                   help="estimate parameters from S samples instead of a census")
    p.add_argument("--variance-mode", choices=("exact", "paper"), default="exact")
    p.add_argument("--band-width", type=float, default=2.0)
    p.add_argument("--degree-floor", type=int, default=None)
    p.add_argument("--actual-ranking", choices=(ORDINAL, COMPETITION), default=ORDINAL)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("table1", help="average rank error per network size")
    p.add_argument("--sizes", type=_int_list, default=[10000, 30000, 50000, 70000, 90000])
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--actual-ranking", choices=(ORDINAL, COMPETITION), default=ORDINAL)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ConfigError, DomainError, EdgeListParseError) as exc:
        print(f"degrank: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegrankError, OSError) as exc:
        print(f"degrank: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return 0


if __name__ == "__main__":
    sys.exit(main())
