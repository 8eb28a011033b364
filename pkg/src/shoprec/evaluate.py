"""Offline evaluation protocol: top-N precision/recall over a user split.

Users are split 80/20 (configurable) into train and test. For every test
user the items they rated at or above the relevance threshold are hidden
from their profile - ratings and purchases both - and the rest is fed as the
query. Recommendations from the training population are then scored against
the hidden relevant set. Each similarity mode is measured twice, with rule
expansion off and on, and metrics are macro-averaged over the test users
that could be evaluated.

Test users with no relevant items (recall undefined) or an empty residual
profile in the active mode are skipped and counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Dataset, split_users
from .errors import ExperimentError, MetricUndefinedError, NoProfileError, RangeError
from .recommend import Profile, Recommender, RecommenderConfig
from .similarity import MODES


def precision_at_n(recommended: Sequence[str], relevant: Iterable[str], n: int) -> float:
    """Percentage of the top-n recommended items that are relevant.

    The denominator is min(n, len(recommended)) so short lists are not
    penalized for slots they never filled; an empty list scores 0.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if not recommended:
        return 0.0
    top = recommended[:n]
    hits = sum(1 for item in top if item in set(relevant))
    return 100.0 * hits / min(n, len(recommended))


def recall_at_n(recommended: Sequence[str], relevant: Iterable[str], n: int) -> float:
    """Percentage of the relevant items found in the top-n recommendations."""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    relevant = set(relevant)
    if not relevant:
        raise MetricUndefinedError("recall is undefined for an empty relevant set")
    top = recommended[:n]
    hits = sum(1 for item in relevant if item in set(top))
    return 100.0 * hits / len(relevant)


@dataclass
class ExperimentConfig:
    train_fraction: float = 0.8
    top_n: int = 5
    seed: int = 0
    modes: tuple[str, ...] = MODES
    k_neighbors: int = 5
    minsup_pct: float = 40.0
    minconf_pct: float = 60.0
    exclusion_threshold: float = 7.0
    relevance_threshold: float = 7.0


@dataclass
class EvalRow:
    mode: str
    rules_enabled: bool
    precision_pct: float
    recall_pct: float
    top_n: int
    users_evaluated: int
    users_skipped: int


@dataclass
class EvalReport:
    rows: list[EvalRow] = field(default_factory=list)
    train_user_count: int = 0
    test_user_count: int = 0

    def row(self, mode: str, rules_enabled: bool) -> EvalRow:
        for r in self.rows:
            if r.mode == mode and r.rules_enabled == rules_enabled:
                return r
        raise KeyError((mode, rules_enabled))


def _holdout_profile(dataset: Dataset, user: str, relevance_threshold: float):
    """Split a test user into (residual query profile, hidden relevant set)."""
    ratings = dataset.ratings_by_user[user]
    relevant = {i for i, v in ratings.items() if v >= relevance_threshold}
    residual_ratings = {i: v for i, v in ratings.items() if i not in relevant}
    residual_purchases = {
        i: n for i, n in dataset.purchase_counts_by_user[user].items() if i not in relevant
    }
    return Profile(ratings=residual_ratings, purchase_counts=residual_purchases), relevant


def run_experiment(dataset: Dataset, config: ExperimentConfig | None = None) -> EvalReport:
    """Run the full mode x rules comparison on one dataset.

    Deterministic for a fixed dataset and config: the split, every index and
    every recommendation are seed-driven and tie-broken by id.
    """
    config = config or ExperimentConfig()
    train, test = split_users(dataset, config.train_fraction, config.seed)
    if not test.users:
        raise ExperimentError("test split is empty; dataset too small for this fraction")

    report = EvalReport(train_user_count=len(train.users), test_user_count=len(test.users))
    for mode in config.modes:
        for rules_enabled in (False, True):
            engine = Recommender(
                train,
                RecommenderConfig(
                    mode=mode,
                    k_neighbors=config.k_neighbors,
                    top_n=config.top_n,
                    minsup_pct=config.minsup_pct,
                    minconf_pct=config.minconf_pct,
                    exclusion_threshold=config.exclusion_threshold,
                    use_rules=rules_enabled,
                ),
            )
            precisions: list[float] = []
            recalls: list[float] = []
            skipped = 0
            for user in test.users:
                profile, relevant = _holdout_profile(test, user, config.relevance_threshold)
                if not relevant:
                    skipped += 1
                    continue
                try:
                    recs = engine.recommend_profile(profile)
                except NoProfileError:
                    skipped += 1
                    continue
                items = [r.item for r in recs]
                precisions.append(precision_at_n(items, relevant, config.top_n))
                recalls.append(recall_at_n(items, relevant, config.top_n))
            evaluated = len(precisions)
            report.rows.append(
                EvalRow(
                    mode=mode,
                    rules_enabled=rules_enabled,
                    precision_pct=sum(precisions) / evaluated if evaluated else 0.0,
                    recall_pct=sum(recalls) / evaluated if evaluated else 0.0,
                    top_n=config.top_n,
                    users_evaluated=evaluated,
                    users_skipped=skipped,
                )
            )
    return report


def format_report(report: EvalReport) -> str:
    """Aligned text table, one row per (mode, rules) combination."""
    header = f"{'mode':<10} {'rules':<5} {'precision%':>10} {'recall%':>8} {'N':>3} {'users':>5} {'skipped':>7}"
    lines = [header, "-" * len(header)]
    for r in report.rows:
        lines.append(
            f"{r.mode:<10} {'on' if r.rules_enabled else 'off':<5} "
            f"{r.precision_pct:>10.2f} {r.recall_pct:>8.2f} {r.top_n:>3} "
            f"{r.users_evaluated:>5} {r.users_skipped:>7}"
        )
    lines.append(
        f"(train users: {report.train_user_count}, test users: {report.test_user_count})"
    )
    return "\n".join(lines)


def report_rows_as_dicts(report: EvalReport) -> list[dict]:
    return [
        {
            "mode": r.mode,
            "rules_enabled": r.rules_enabled,
            "precision_pct": round(r.precision_pct, 4),
            "recall_pct": round(r.recall_pct, 4),
            "top_n": r.top_n,
            "users_evaluated": r.users_evaluated,
            "users_skipped": r.users_skipped,
        }
        for r in report.rows
    ]
