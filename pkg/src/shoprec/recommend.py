"""End-to-end recommendation pipeline.

Candidate generation runs in two phases over a training dataset:

  Phase A - neighbor candidates. Find the k most cosine-similar users in the
  requested mode; each neighbor offers its best-rated item (rating at or
  above the exclusion threshold) that the target has not seen, falling back
  to its next-best item whenever the purchase-order filter rejects one.

  Phase B - rule expansion. For every Phase-A item, association rules whose
  antecedent contains it contribute their consequent items, again subject to
  the purchase-order filter and the not-already-seen rule.

Neighbor candidates are ranked by similarity * neighbor rating, rule
candidates by (confidence / 100) * parent score, and the final list keeps
all neighbor candidates ahead of all rule candidates. That two-tier order
guarantees that enabling rule expansion never pushes a neighbor
recommendation out of the top-N, so recall can only improve when rules are
switched on.

Brand-new users (no ratings, no purchases) get the popularity ranking from
the implicit model instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Dataset
from .errors import ConfigError, NoProfileError, NotFoundError
from .implicit_vsm import build_iif, new_user_scores
from .rules import AssociationRule, fp_growth, generate_rules
from .sequence import bought_after, build_precedence_index
from .similarity import MODES, UserVector, profile_weights, rank_by_cosine


@dataclass
class Profile:
    """A query profile: explicit ratings plus purchase occurrence counts.

    Stands in for users that are not part of the training data (new visitors,
    held-out evaluation users). Items present in either map count as seen.
    """

    ratings: dict[str, float] = field(default_factory=dict)
    purchase_counts: dict[str, int] = field(default_factory=dict)

    @property
    def seen_items(self) -> set[str]:
        return set(self.ratings) | set(self.purchase_counts)

    @property
    def history(self) -> set[str]:
        return set(self.purchase_counts)


@dataclass
class RecommenderConfig:
    mode: str = "simple"
    k_neighbors: int = 5
    top_n: int = 5
    minsup_pct: float = 40.0
    minconf_pct: float = 60.0
    exclusion_threshold: float = 7.0
    use_rules: bool = True

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.k_neighbors < 1:
            raise ConfigError("k_neighbors must be >= 1")
        if self.top_n < 1:
            raise ConfigError("top_n must be >= 1")
        if not 0.0 <= self.exclusion_threshold <= 10.0:
            raise ConfigError("exclusion_threshold must be within [0, 10]")


@dataclass
class Recommendation:
    item: str
    score: float
    source: str  # neighbor | rule | popularity
    explain: str  # neighbor user id, triggering rule, or "cold-start"


def profile_of(dataset: Dataset, user: str) -> Profile:
    if not dataset.has_user(user):
        raise NotFoundError(f"unknown user {user!r}")
    return Profile(
        ratings=dict(dataset.ratings_by_user[user]),
        purchase_counts=dict(dataset.purchase_counts_by_user[user]),
    )


class Recommender:
    """Recommendation engine over an immutable training dataset.

    Builds its indices (inverse-frequency table, precedence index, mined
    rules, per-mode user vectors) once and serves any number of queries.
    """

    def __init__(self, train: Dataset, config: RecommenderConfig | None = None):
        self.train = train
        self.config = config or RecommenderConfig()
        self.config.validate()
        self.precedence = build_precedence_index(train)
        self.iif = build_iif(train).iif if train.users else {}
        self._vectors: dict[str, dict[str, UserVector]] = {}
        self._rules: list[AssociationRule] | None = None

    def _mode_vectors(self, mode: str) -> dict[str, UserVector]:
        if mode not in self._vectors:
            self._vectors[mode] = {
                u: UserVector(
                    user=u,
                    weights=profile_weights(
                        self.train.ratings_by_user[u],
                        self.train.purchase_counts_by_user[u],
                        mode,
                        self.iif,
                    ),
                    mode=mode,
                )
                for u in self.train.users
            }
        return self._vectors[mode]

    def rules(self) -> list[AssociationRule]:
        if self._rules is None:
            frequents = fp_growth(self.train.transactions, self.config.minsup_pct)
            self._rules = generate_rules(frequents, self.config.minconf_pct)
        return self._rules

    def recommend_user(self, user: str) -> list[Recommendation]:
        """Recommend for a user already present in the training data."""
        return self.recommend_profile(profile_of(self.train, user), exclude_user=user)

    def recommend_profile(self, profile: Profile, exclude_user: str | None = None) -> list[Recommendation]:
        cfg = self.config
        target = UserVector(
            user=exclude_user or "<query>",
            weights=profile_weights(profile.ratings, profile.purchase_counts, cfg.mode, self.iif),
            mode=cfg.mode,
        )
        if not target.nonzero():
            raise NoProfileError(f"query profile is empty in mode {cfg.mode}")

        candidates = {
            u: vec for u, vec in self._mode_vectors(cfg.mode).items() if u != exclude_user
        }
        if not candidates:
            return []
        ranked = rank_by_cosine(target, candidates, cfg.k_neighbors)
        neighbors = [(u, sim) for u, sim in ranked if sim > 0.0]

        seen = profile.seen_items
        history = profile.history

        # Phase A: one pick per neighbor, best rating first, sequence-filtered
        neighbor_scores: dict[str, tuple[float, str]] = {}
        for user, sim in neighbors:
            eligible = sorted(
                (
                    (item, value)
                    for item, value in self.train.ratings_by_user[user].items()
                    if value >= cfg.exclusion_threshold and item not in seen
                ),
                key=lambda e: (-e[1], e[0]),
            )
            for item, value in eligible:
                if not bought_after(self.precedence, item, history):
                    continue
                score = sim * value
                if item not in neighbor_scores or score > neighbor_scores[item][0]:
                    neighbor_scores[item] = (score, user)
                break  # this neighbor has made its pick

        # Phase B: expand each picked item through its association rules
        rule_scores: dict[str, tuple[float, str]] = {}
        if cfg.use_rules and neighbor_scores:
            parents = sorted(neighbor_scores.items(), key=lambda e: (-e[1][0], e[0]))
            for parent_item, (parent_score, _) in parents:
                for rule in self.rules():
                    if parent_item not in rule.antecedent:
                        continue
                    for item in rule.consequent:
                        if item in seen or item in neighbor_scores:
                            continue
                        if not bought_after(self.precedence, item, history):
                            continue
                        score = rule.confidence_pct / 100.0 * parent_score
                        if item not in rule_scores or score > rule_scores[item][0]:
                            explain = f"{';'.join(rule.antecedent)} => {';'.join(rule.consequent)}"
                            rule_scores[item] = (score, explain)

        result = [
            Recommendation(item=item, score=score, source="neighbor", explain=user)
            for item, (score, user) in sorted(
                neighbor_scores.items(), key=lambda e: (-e[1][0], e[0])
            )
        ]
        result.extend(
            Recommendation(item=item, score=score, source="rule", explain=explain)
            for item, (score, explain) in sorted(
                rule_scores.items(), key=lambda e: (-e[1][0], e[0])
            )
        )
        return result[: cfg.top_n]

    def recommend_new_user(self) -> list[Recommendation]:
        """Cold-start path: most-purchased items first."""
        return [
            Recommendation(item=item, score=score, source="popularity", explain="cold-start")
            for item, score in new_user_scores(self.train)[: self.config.top_n]
        ]


def recommend(train: Dataset, target: str | Profile, config: RecommenderConfig | None = None) -> list[Recommendation]:
    """One-shot recommendation for a training user (by id) or an external profile."""
    engine = Recommender(train, config)
    if isinstance(target, Profile):
        return engine.recommend_profile(target)
    return engine.recommend_user(target)


def recommend_new_user(train: Dataset, config: RecommenderConfig | None = None) -> list[Recommendation]:
    """One-shot cold-start recommendation from purchase popularity."""
    return Recommender(train, config).recommend_new_user()
