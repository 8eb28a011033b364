import random

import pytest

from shoprec.corpus import (
    Dataset,
    SyntheticConfig,
    generate_synthetic,
    load_dataset,
    load_ratings,
    load_transactions,
    split_users,
    to_rating_csv,
    to_transaction_csv,
)
from shoprec.errors import ConfigError, IntegrityError, ParseError, RangeError

from conftest import TABLE1_CSV, rate, tx


class TestLoadTransactions:
    def test_table1_shape(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text(TABLE1_CSV)
        ds = load_transactions(path)
        assert len(ds.transactions) == 5
        assert set(ds.items) == {"P1", "P2", "P4", "P5"}
        by_tid = {t.tid: t for t in ds.transactions}
        assert by_tid["200"].items == ("P1", "P2", "P4")  # row order preserved

    def test_empty_file(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("")
        assert load_transactions(path).transactions == ()
        path.write_text("tid,user,seq,items\n")
        assert load_transactions(path).transactions == ()

    def test_duplicate_seq_rejected(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("tid,user,seq,items\nT1,U1,1,P1\nT2,U1,1,P2\n")
        with pytest.raises(IntegrityError):
            load_transactions(path)

    def test_malformed_row_names_line(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("tid,user,seq,items\nT1,U1,1,P1\nT2,U1,not-a-number,P2\n")
        with pytest.raises(ParseError, match="line 3"):
            load_transactions(path)

    def test_duplicate_item_in_row(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("tid,user,seq,items\nT1,U1,1,P1;P1\n")
        with pytest.raises(IntegrityError):
            load_transactions(path)

    def test_wrong_header(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b,c\n")
        with pytest.raises(ParseError, match="line 1"):
            load_transactions(path)


class TestLoadRatings:
    def test_basic_row(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("user,item,value\nU1,P1,5\n")
        ds = load_ratings(path)
        assert ds.ratings[0].value == 5.0

    def test_out_of_range(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("user,item,value\nU1,P1,11\n")
        with pytest.raises(RangeError):
            load_ratings(path)

    def test_duplicate_pair(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("user,item,value\nU1,P1,5\nU1,P1,6\n")
        with pytest.raises(IntegrityError):
            load_ratings(path)

    def test_bad_value(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("user,item,value\nU1,P1,abc\n")
        with pytest.raises(ParseError, match="line 2"):
            load_ratings(path)


def test_round_trip(tmp_path):
    ds = generate_synthetic(SyntheticConfig(users_per_class=6, rng_seed=9))
    # every user and item is referenced in this config, so files carry everything
    assert set(ds.users) == {t.user for t in ds.transactions} | {r.user for r in ds.ratings}
    assert set(ds.items) == {i for t in ds.transactions for i in t.items} | {
        r.item for r in ds.ratings
    }
    tp, rp = tmp_path / "t.csv", tmp_path / "r.csv"
    tp.write_text(to_transaction_csv(ds))
    rp.write_text(to_rating_csv(ds))
    reloaded = load_dataset(tp, rp)
    assert reloaded == ds


class TestDatasetBuild:
    def test_unknown_references_rejected(self):
        with pytest.raises(IntegrityError):
            Dataset.build(users=["U1"], items=["P1"], transactions=[tx("U2", 1, "P1")])
        with pytest.raises(IntegrityError):
            Dataset.build(users=["U1"], items=["P1"], ratings=[rate("U1", "P9", 5)])

    def test_rating_range_checked(self):
        with pytest.raises(RangeError):
            Dataset.build(ratings=[rate("U1", "P1", 10.5)])

    def test_empty_transaction_rejected(self):
        with pytest.raises(IntegrityError):
            Dataset.build(transactions=[tx("U1", 1)])


class TestSynthetic:
    def test_shape_and_invariants(self):
        ds = generate_synthetic(SyntheticConfig(rng_seed=42))
        assert len(ds.users) == 100
        assert len(ds.items) == 60
        for user in ds.users:
            seqs = [t.seq for t in ds.transactions_by_user[user]]
            assert seqs == sorted(seqs)
            assert len(set(seqs)) == len(seqs)
        assert all(0.0 <= r.value <= 10.0 for r in ds.ratings)

    def test_determinism(self):
        a = generate_synthetic(SyntheticConfig(rng_seed=7))
        b = generate_synthetic(SyntheticConfig(rng_seed=7))
        assert a == b
        assert to_transaction_csv(a) == to_transaction_csv(b)
        assert to_rating_csv(a) == to_rating_csv(b)

    def test_different_seeds_differ(self):
        a = generate_synthetic(SyntheticConfig(rng_seed=1))
        b = generate_synthetic(SyntheticConfig(rng_seed=2))
        assert a != b

    def test_zero_users(self):
        ds = generate_synthetic(SyntheticConfig(users_per_class=0, rng_seed=1))
        assert ds.users == ()
        assert ds.transactions == ()

    def test_invalid_config(self):
        with pytest.raises(ConfigError):
            generate_synthetic(SyntheticConfig(num_classes=7, num_items=60))
        with pytest.raises(ConfigError):
            generate_synthetic(SyntheticConfig(class_affinity=0.0))
        with pytest.raises(ConfigError):
            generate_synthetic(SyntheticConfig(ratings_per_user=(5, 2)))

    def test_class_affinity_plants_structure(self):
        ds = generate_synthetic(SyntheticConfig(rng_seed=3))
        # users of class 0 hold items I001-I015; most of their events stay in-block
        block = {f"I{i:03d}" for i in range(1, 16)}
        first_class_users = {f"U{i:03d}" for i in range(1, 26)}
        events = [
            i
            for t in ds.transactions
            if t.user in first_class_users
            for i in t.items
        ]
        in_block = sum(1 for i in events if i in block)
        assert in_block / len(events) > 0.7


class TestSplitUsers:
    def test_eighty_twenty(self):
        ds = random_ten_users()
        train, test = split_users(ds, 0.8, seed=1)
        assert len(train.users) == 8
        assert len(test.users) == 2

    def test_single_user_goes_to_train(self):
        ds = Dataset.build(ratings=[rate("U1", "P1", 5)])
        train, test = split_users(ds, 0.8, seed=1)
        assert train.users == ("U1",)
        assert test.users == ()

    def test_deterministic(self):
        ds = random_ten_users()
        assert split_users(ds, 0.8, seed=5) == split_users(ds, 0.8, seed=5)

    def test_partition_property(self):
        rng = random.Random(0)
        for _ in range(20):
            n = rng.randint(1, 15)
            ds = Dataset.build(ratings=[rate(f"U{i}", "P1", 5) for i in range(n)])
            frac = rng.choice([0.5, 0.7, 0.8, 0.9])
            train, test = split_users(ds, frac, seed=rng.randint(0, 99))
            assert set(train.users) | set(test.users) == set(ds.users)
            assert not set(train.users) & set(test.users)
            assert all(t.user in set(train.users) for t in train.transactions)
            assert all(r.user in set(test.users) for r in test.ratings)

    def test_fraction_out_of_range(self):
        ds = random_ten_users()
        for frac in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(RangeError):
                split_users(ds, frac, seed=1)


def random_ten_users():
    return Dataset.build(
        transactions=[tx(f"U{i}", 1, "P1") for i in range(10)],
        ratings=[rate(f"U{i}", "P1", 5) for i in range(10)],
    )
