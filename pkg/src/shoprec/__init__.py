"""Hybrid product recommender.

User-based collaborative filtering with a restricted cosine kernel and
purchase-frequency weighting, an implicit purchase-count vector model with a
popularity cold-start path, a purchase-order precedence filter, association
rule expansion via FP-growth, and an offline precision/recall harness.
"""

from .corpus import (
    Dataset,
    RatingRecord,
    SyntheticConfig,
    Transaction,
    generate_synthetic,
    load_dataset,
    load_ratings,
    load_transactions,
    save_ratings,
    save_transactions,
    split_users,
)
from .evaluate import (
    EvalReport,
    EvalRow,
    ExperimentConfig,
    precision_at_n,
    recall_at_n,
    run_experiment,
)
from .implicit_vsm import IifTable, build_iif, implicit_vector, new_user_scores
from .recommend import (
    Profile,
    Recommendation,
    Recommender,
    RecommenderConfig,
    recommend,
    recommend_new_user,
)
from .rules import (
    AssociationRule,
    FrequentItemset,
    fp_growth,
    generate_rules,
    itemset_support,
)
from .sequence import PrecedenceIndex, bought_after, build_precedence_index
from .similarity import (
    MODES,
    NeighborList,
    UserVector,
    cosine_restricted,
    msd,
    nearest_neighbors,
    user_vector,
)

__all__ = [
    "AssociationRule",
    "Dataset",
    "EvalReport",
    "EvalRow",
    "ExperimentConfig",
    "FrequentItemset",
    "IifTable",
    "MODES",
    "NeighborList",
    "PrecedenceIndex",
    "Profile",
    "RatingRecord",
    "Recommendation",
    "Recommender",
    "RecommenderConfig",
    "SyntheticConfig",
    "Transaction",
    "UserVector",
    "bought_after",
    "build_iif",
    "build_precedence_index",
    "cosine_restricted",
    "fp_growth",
    "generate_rules",
    "generate_synthetic",
    "implicit_vector",
    "itemset_support",
    "load_dataset",
    "load_ratings",
    "load_transactions",
    "msd",
    "nearest_neighbors",
    "new_user_scores",
    "precision_at_n",
    "recall_at_n",
    "recommend",
    "recommend_new_user",
    "run_experiment",
    "save_ratings",
    "save_transactions",
    "split_users",
    "user_vector",
]

__version__ = "0.1.0"
