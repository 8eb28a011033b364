import random

from shoprec.corpus import Dataset
from shoprec.sequence import bought_after, build_precedence_index, dump_lines

from conftest import random_dataset, tx


class TestBuildIndex:
    def test_four_purchase_chain(self):
        ds = Dataset.build(transactions=[tx("U1", s, f"P{s}") for s in (1, 2, 3, 4)])
        idx = build_precedence_index(ds)
        expected = {
            ("P1", "P2"): 1, ("P1", "P3"): 1, ("P1", "P4"): 1,
            ("P2", "P3"): 1, ("P2", "P4"): 1, ("P3", "P4"): 1,
        }
        assert idx.counts == expected

    def test_items_in_one_transaction_are_simultaneous(self):
        ds = Dataset.build(transactions=[tx("U1", 1, "P1", "P2")])
        assert build_precedence_index(ds).counts == {}

    def test_empty_dataset(self):
        assert build_precedence_index(Dataset()).counts == {}

    def test_pairs_aggregate_across_users(self):
        ds = Dataset.build(
            transactions=[tx("U1", 1, "A"), tx("U1", 2, "B"), tx("U2", 1, "B"), tx("U2", 2, "A")]
        )
        idx = build_precedence_index(ds)
        # both directions exist because the two users shopped in opposite order
        assert idx.count("A", "B") == 1
        assert idx.count("B", "A") == 1

    def test_matches_brute_force_oracle(self):
        rng = random.Random(9)
        for _ in range(40):
            ds = random_dataset(rng, n_users=4, n_items=5, with_ratings=False)
            got = build_precedence_index(ds).counts
            expected = {}
            for user in ds.users:
                events = [
                    (t.seq, i)
                    for t in ds.transactions
                    if t.user == user
                    for i in t.items
                ]
                for s1, i1 in events:
                    for s2, i2 in events:
                        if s1 < s2:
                            expected[(i1, i2)] = expected.get((i1, i2), 0) + 1
            assert got == expected

    def test_rebuild_is_identical(self):
        ds = random_dataset(random.Random(10), with_ratings=False)
        assert build_precedence_index(ds).counts == build_precedence_index(ds).counts


class TestBoughtAfter:
    def test_series_bought_in_order(self, physics):
        idx = build_precedence_index(physics)
        history = {"Ph3", "Ph4"}
        # the first two volumes never follow the later ones in training
        assert not bought_after(idx, "Ph1", history)
        assert not bought_after(idx, "Ph2", history)
        assert bought_after(idx, "Ph4", {"Ph1"})

    def test_candidate_follows_history(self, worked_example):
        idx = build_precedence_index(worked_example)
        assert bought_after(idx, "P5", {"P1", "P2", "P3"})

    def test_empty_history_passes(self):
        idx = build_precedence_index(Dataset())
        assert bought_after(idx, "anything", set())

    def test_monotone_in_history(self):
        rng = random.Random(11)
        for _ in range(30):
            ds = random_dataset(rng, n_users=4, n_items=5, with_ratings=False)
            idx = build_precedence_index(ds)
            items = list(ds.items)
            small = set(rng.sample(items, rng.randint(0, 2)))
            big = small | set(rng.sample(items, rng.randint(0, 3)))
            for candidate in items:
                if bought_after(idx, candidate, small):
                    assert bought_after(idx, candidate, big) or not small
                    # empty small always passes; a nonempty pass must survive growth
                    if small:
                        assert bought_after(idx, candidate, big)


def test_dump_lines_sorted(physics):
    lines = dump_lines(build_precedence_index(physics))
    assert lines == [
        "Ph1,Ph2,1",
        "Ph1,Ph3,1",
        "Ph1,Ph4,1",
        "Ph2,Ph3,1",
        "Ph2,Ph4,1",
        "Ph3,Ph4,1",
    ]
    assert lines == sorted(lines)
