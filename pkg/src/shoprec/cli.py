"""Command-line interface.

Subcommands: ingest-check, recommend, recommend-new, mine-rules, dump-index,
gen-data, evaluate. Exit codes: 0 success, 1 usage error, 2 data error.
Every command is deterministic given the same files, flags and seeds; --json
switches list outputs to one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from pathlib import Path

from .corpus import (
    SyntheticConfig,
    generate_synthetic,
    load_dataset,
    load_transactions,
    save_ratings,
    save_transactions,
)
from .errors import ShoprecError
from .evaluate import ExperimentConfig, format_report, report_rows_as_dicts, run_experiment
from .recommend import RecommenderConfig, recommend, recommend_new_user
from .rules import format_rule, fp_growth, generate_rules
from .sequence import build_precedence_index, dump_lines
from .similarity import MODES


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _recommender_config(args) -> RecommenderConfig:
    return RecommenderConfig(
        mode=args.mode,
        k_neighbors=args.k,
        top_n=args.top_n,
        minsup_pct=args.minsup,
        minconf_pct=args.minconf,
        exclusion_threshold=args.threshold,
        use_rules=not args.no_rules,
    )


def _print_recommendations(recs, as_json: bool) -> None:
    for rank, rec in enumerate(recs, start=1):
        if as_json:
            _emit_json(
                {
                    "rank": rank,
                    "item": rec.item,
                    "score": round(rec.score, 4),
                    "source": rec.source,
                    "explain": rec.explain,
                }
            )
        else:
            print(f"{rank}. {rec.item} {rec.score:.4f} {rec.source} {rec.explain}")


def _cmd_ingest_check(args) -> int:
    ds = load_dataset(args.transactions, args.ratings)
    print(
        f"ok: users={len(ds.users)} items={len(ds.items)} "
        f"transactions={len(ds.transactions)} ratings={len(ds.ratings)}"
    )
    return 0


def _cmd_recommend(args) -> int:
    ds = load_dataset(args.transactions, args.ratings)
    recs = recommend(ds, args.user, _recommender_config(args))
    _print_recommendations(recs, args.json)
    return 0


def _cmd_recommend_new(args) -> int:
    ds = load_dataset(args.transactions, args.ratings)
    cfg = RecommenderConfig(top_n=args.top_n)
    _print_recommendations(recommend_new_user(ds, cfg), args.json)
    return 0


def _cmd_mine_rules(args) -> int:
    ds = load_transactions(args.transactions)
    frequents = fp_growth(ds.transactions, args.minsup)
    rules = generate_rules(frequents, args.minconf, antecedent_filter=args.antecedent)
    for rule in rules:
        if args.json:
            _emit_json(
                {
                    "antecedent": list(rule.antecedent),
                    "consequent": list(rule.consequent),
                    "support_pct": round(rule.support_pct, 4),
                    "confidence_pct": round(rule.confidence_pct, 4),
                }
            )
        else:
            print(format_rule(rule))
    return 0


def _cmd_dump_index(args) -> int:
    ds = load_transactions(args.transactions)
    for line in dump_lines(build_precedence_index(ds)):
        print(line)
    return 0


def _cmd_gen_data(args) -> int:
    config = SyntheticConfig(
        num_classes=args.classes,
        num_items=args.items,
        users_per_class=args.users_per_class,
        ratings_per_user=tuple(args.ratings_per_user),
        transactions_per_user=tuple(args.transactions_per_user),
        class_affinity=args.affinity,
        noise_rating_spread=args.spread,
        rng_seed=args.seed,
    )
    ds = generate_synthetic(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tx_path, rt_path = out / "transactions.csv", out / "ratings.csv"
    save_transactions(ds, tx_path)
    save_ratings(ds, rt_path)
    print(f"wrote {tx_path} ({len(ds.transactions)} transactions)")
    print(f"wrote {rt_path} ({len(ds.ratings)} ratings)")
    return 0


def _cmd_evaluate(args) -> int:
    ds = load_dataset(args.transactions, args.ratings)
    config = ExperimentConfig(
        train_fraction=args.split,
        top_n=args.n,
        seed=args.seed,
        modes=tuple(args.modes.split(",")),
        k_neighbors=args.k,
        minsup_pct=args.minsup,
        minconf_pct=args.minconf,
        exclusion_threshold=args.threshold,
        relevance_threshold=args.threshold,
    )
    for mode in config.modes:
        if mode not in MODES:
            raise ShoprecError(f"unknown mode {mode!r}; expected one of {MODES}")
    report = run_experiment(ds, config)
    if args.json:
        for row in report_rows_as_dicts(report):
            _emit_json(row)
    else:
        print(format_report(report))
    return 0


def _add_data_args(p, ratings_required: bool = True, transactions_required: bool = True):
    p.add_argument("--transactions", required=transactions_required, help="transaction CSV path")
    p.add_argument(
        "--ratings",
        required=ratings_required,
        default=None,
        help="rating CSV path",
    )


def _add_recommender_args(p):
    p.add_argument("--mode", choices=MODES, default="simple")
    p.add_argument("--k", type=int, default=5, help="neighbor count")
    p.add_argument("--top-n", type=int, default=5)
    p.add_argument("--minsup", type=float, default=40.0, help="min support %% for rules")
    p.add_argument("--minconf", type=float, default=60.0, help="min confidence %% for rules")
    p.add_argument("--threshold", type=float, default=7.0, help="rating exclusion threshold")
    p.add_argument("--no-rules", action="store_true", help="disable rule expansion")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shoprec", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-check", help="load and validate CSV inputs")
    _add_data_args(p, ratings_required=False, transactions_required=False)
    p.set_defaults(func=_cmd_ingest_check)

    p = sub.add_parser("recommend", help="recommend items for an existing user")
    _add_data_args(p)
    p.add_argument("--user", required=True)
    _add_recommender_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_recommend)

    p = sub.add_parser("recommend-new", help="cold-start recommendations by popularity")
    _add_data_args(p, ratings_required=False)
    p.add_argument("--top-n", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_recommend_new)

    p = sub.add_parser("mine-rules", help="mine association rules from transactions")
    p.add_argument("--transactions", required=True)
    p.add_argument("--minsup", type=float, default=40.0)
    p.add_argument("--minconf", type=float, default=60.0)
    p.add_argument("--antecedent", default=None, help="only rules with this item in the antecedent")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_mine_rules)

    p = sub.add_parser("dump-index", help="dump the purchase-precedence index")
    p.add_argument("--transactions", required=True)
    p.set_defaults(func=_cmd_dump_index)

    p = sub.add_parser("gen-data", help="generate a synthetic planted-class dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--classes", type=int, default=4)
    p.add_argument("--items", type=int, default=60)
    p.add_argument("--users-per-class", type=int, default=25)
    p.add_argument("--ratings-per-user", type=int, nargs=2, default=[10, 18], metavar=("LO", "HI"))
    p.add_argument(
        "--transactions-per-user", type=int, nargs=2, default=[5, 10], metavar=("LO", "HI")
    )
    p.add_argument("--affinity", type=float, default=0.9)
    p.add_argument("--spread", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("evaluate", help="run the precision/recall comparison")
    _add_data_args(p)
    p.add_argument("--split", type=float, default=0.8, help="train fraction")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=5, help="top-N cutoff")
    p.add_argument("--modes", default=",".join(MODES), help="comma-separated mode list")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--minsup", type=float, default=40.0)
    p.add_argument("--minconf", type=float, default=60.0)
    p.add_argument("--threshold", type=float, default=7.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv=None) -> int:
    if hasattr(signal, "SIGPIPE"):
        # die quietly when a downstream pager/head closes the pipe
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    if not argv:
        parser.print_help(sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ShoprecError, OSError) as exc:
        print(f"shoprec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
