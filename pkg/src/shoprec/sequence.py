"""Purchase-order precedence index.

Records, across all training users, how often item b was bought in a later
transaction than item a. "Later" means anywhere later in that user's
chronological stream, not immediately next; items inside one transaction are
simultaneous and produce no pair. The index answers the filter question
"has this candidate ever been bought after something the target already
owns?" - a candidate that never was is suppressed.

Both (a, b) and (b, a) may be present: different users shop in different
orders, and the filter only asks for existence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .corpus import Dataset


@dataclass
class PrecedenceIndex:
    """Occurrence counts of (earlier item, later item) purchase pairs."""

    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    def count(self, earlier: str, later: str) -> int:
        return self.counts.get((earlier, later), 0)


def build_precedence_index(dataset: Dataset) -> PrecedenceIndex:
    """Count every cross-transaction ordered item pair per user.

    For each user, every purchase event in a transaction with lower seq pairs
    with every event in each strictly later transaction.
    """
    counts: dict[tuple[str, str], int] = {}
    for user in dataset.users:
        txns = dataset.transactions_by_user[user]  # seq-sorted
        for i, earlier_txn in enumerate(txns):
            for later_txn in txns[i + 1 :]:
                for a in earlier_txn.items:
                    for b in later_txn.items:
                        counts[(a, b)] = counts.get((a, b), 0) + 1
    return PrecedenceIndex(counts=counts)


def bought_after(index: PrecedenceIndex, candidate: str, history: Iterable[str]) -> bool:
    """True when the candidate was ever bought after any item in the history.

    An empty history imposes no constraint and always passes, so brand-new
    users receive unfiltered recommendations.
    """
    history = set(history)
    if not history:
        return True
    return any(index.count(h, candidate) >= 1 for h in history)


def dump_lines(index: PrecedenceIndex) -> list[str]:
    """Render the index as ``earlier,later,count`` lines, lexicographically sorted."""
    return [f"{a},{b},{n}" for (a, b), n in sorted(index.counts.items())]
