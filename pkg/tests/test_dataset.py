import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hifactmix import dataset as ds
from hifactmix.errors import (
    BadRatiosError,
    BadWeightsError,
    EmptyCorpusError,
    ParseError,
    ValidationError,
)
from hifactmix.text import load_english_lexicon
from hifactmix.types import VeracityLabel


def _record_line(rec_id="c1", claim="sarkar ne sadak banaya", label="true",
                 evidence_id="e1", evidence="sadak bana hai", gold=None):
    return json.dumps({
        "id": rec_id, "claim_text": claim, "speaker": "CM X", "state": "UP",
        "date": "2024-01-01", "evidence_id": evidence_id, "evidence_text": evidence,
        "evidence_url": "", "label": label, "gold_explanation": gold,
    })


class TestLoadCorpus:
    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.jsonl"
        p.write_text("")
        assert len(ds.load_corpus(str(p))) == 0

    def test_single_record_round_trip(self, tmp_path):
        p = tmp_path / "one.jsonl"
        p.write_text(_record_line(gold="kyunki records kehte hain") + "\n")
        corpus = ds.load_corpus(str(p))
        assert len(corpus) == 1
        rec = corpus.records[0]
        assert rec.claim.id == "c1"
        assert rec.claim.text == "sarkar ne sadak banaya"
        assert rec.label == VeracityLabel.TRUE
        assert rec.gold_explanation == "kyunki records kehte hain"
        # write back and reload: field-exact
        out = tmp_path / "two.jsonl"
        ds.save_corpus(corpus, str(out))
        again = ds.load_corpus(str(out))
        assert again.records == corpus.records

    def test_duplicate_id_rejected(self, tmp_path):
        p = tmp_path / "dup.jsonl"
        p.write_text(_record_line() + "\n" + _record_line(evidence_id="e2") + "\n")
        with pytest.raises(ValidationError, match="c1"):
            ds.load_corpus(str(p))

    def test_malformed_line_reports_line_number(self, tmp_path):
        p = tmp_path / "bad.jsonl"
        p.write_text(_record_line() + "\n{not json\n")
        with pytest.raises(ParseError, match="line 2"):
            ds.load_corpus(str(p))

    def test_unknown_label_is_validation_error(self, tmp_path):
        p = tmp_path / "lbl.jsonl"
        p.write_text(_record_line(label="partially false") + "\n")
        with pytest.raises(ValidationError):
            ds.load_corpus(str(p))


class TestCorpusStats:
    def test_avg_claim_tokens(self, tmp_path):
        p = tmp_path / "c.jsonl"
        p.write_text(_record_line(claim="a b c") + "\n")
        stats = ds.corpus_stats(ds.load_corpus(str(p)), set())
        assert stats.avg_claim_tokens == 3.0

    def test_identical_claims_constant_average(self, tmp_path):
        lines = [_record_line(rec_id=f"c{i}", evidence_id=f"e{i}",
                              claim="ek do teen char") for i in range(5)]
        p = tmp_path / "c.jsonl"
        p.write_text("\n".join(lines) + "\n")
        stats = ds.corpus_stats(ds.load_corpus(str(p)), set())
        assert stats.avg_claim_tokens == 4.0

    def test_empty_corpus_raises(self):
        with pytest.raises(EmptyCorpusError):
            ds.corpus_stats(ds.Corpus(records=()), set())

    def test_histogram_sums_to_n(self, small_corpus):
        stats = ds.corpus_stats(small_corpus, load_english_lexicon())
        assert sum(stats.label_histogram.values()) == stats.n_records


class TestLargestRemainder:
    def test_exact_apportionment(self):
        assert ds.largest_remainder(1500, [0.7, 0.1, 0.2]) == [1050, 150, 300]

    def test_remainder_goes_to_largest_fraction(self):
        assert ds.largest_remainder(10, [0.7, 0.1, 0.2]) == [7, 1, 2]

    def test_tie_breaks_to_earlier_position(self):
        assert ds.largest_remainder(1, [0.5, 0.5]) == [1, 0]

    def test_bad_weights(self):
        with pytest.raises(BadWeightsError):
            ds.largest_remainder(10, [0.0, 0.0])


class TestStratifiedSplit:
    def test_1500_record_sizes(self):
        # group sizes 600/450/300/150: each apportions exactly at 70/10/20
        corpus = ds.generate_fixture(1500, (0.4, 0.3, 0.2, 0.1), seed=3)
        split = ds.stratified_split(corpus, (0.7, 0.1, 0.2), seed=9)
        assert (len(split.train_ids), len(split.val_ids), len(split.test_ids)) == (
            1050, 150, 300,
        )

    def test_single_label_group(self):
        corpus = ds.generate_fixture(10, (1, 0, 0, 0), seed=5)
        split = ds.stratified_split(corpus, (0.7, 0.1, 0.2), seed=1)
        assert (len(split.train_ids), len(split.val_ids), len(split.test_ids)) == (7, 1, 2)

    def test_degenerate_ratio_all_train(self, small_corpus):
        split = ds.stratified_split(small_corpus, (1.0, 0.0, 0.0), seed=1)
        assert len(split.train_ids) == len(small_corpus)
        assert split.val_ids == () and split.test_ids == ()

    def test_bad_ratios(self, small_corpus):
        with pytest.raises(BadRatiosError):
            ds.stratified_split(small_corpus, (0.5, 0.5, 0.5), seed=1)

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpusError):
            ds.stratified_split(ds.Corpus(records=()), (0.7, 0.1, 0.2), seed=1)

    def test_determinism(self, small_corpus):
        a = ds.stratified_split(small_corpus, (0.7, 0.1, 0.2), seed=11)
        b = ds.stratified_split(small_corpus, (0.7, 0.1, 0.2), seed=11)
        assert a == b

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32), n=st.integers(4, 60))
    def test_partition_property(self, seed, n):
        corpus = ds.generate_fixture(n, (2, 1, 1, 1), seed=seed % 1000)
        split = ds.stratified_split(corpus, (0.7, 0.1, 0.2), seed=seed)
        train, val, test = map(set, (split.train_ids, split.val_ids, split.test_ids))
        all_ids = {r.claim.id for r in corpus.records}
        assert train | val | test == all_ids
        assert not (train & val) and not (train & test) and not (val & test)
        assert len(train) + len(val) + len(test) == n

    def test_stratification_deviation_at_most_one(self):
        corpus = ds.generate_fixture(333, (0.4, 0.3, 0.2, 0.1), seed=8)
        split = ds.stratified_split(corpus, (0.7, 0.1, 0.2), seed=2)
        label_of = {r.claim.id: r.label for r in corpus.records}
        group_sizes = {l: sum(1 for v in label_of.values() if v == l) for l in VeracityLabel}
        for ids, ratio in zip((split.train_ids, split.val_ids, split.test_ids),
                              (0.7, 0.1, 0.2)):
            for label in VeracityLabel:
                got = sum(1 for i in ids if label_of[i] == label)
                assert abs(got - group_sizes[label] * ratio) <= 1

    def test_save_load_round_trip(self, small_corpus, tmp_path):
        split = ds.stratified_split(small_corpus, (0.7, 0.1, 0.2), seed=4)
        ds.save_split(split, str(tmp_path))
        loaded = ds.load_split(str(tmp_path))
        assert loaded.train_ids == split.train_ids
        assert loaded.val_ids == split.val_ids
        assert loaded.test_ids == split.test_ids


class TestGenerateFixture:
    def test_equal_weights_n4_one_per_label(self):
        corpus = ds.generate_fixture(4, (1, 1, 1, 1), seed=0)
        labels = sorted(int(r.label) for r in corpus.records)
        assert labels == [0, 1, 2, 3]

    def test_determinism_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        ds.save_corpus(ds.generate_fixture(50, (1, 2, 1, 1), 0.5, seed=77), str(a))
        ds.save_corpus(ds.generate_fixture(50, (1, 2, 1, 1), 0.5, seed=77), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_label_histogram_largest_remainder(self):
        corpus = ds.generate_fixture(100, (0.4, 0.3, 0.2, 0.1), seed=1)
        hist = {l: 0 for l in VeracityLabel}
        for r in corpus.records:
            hist[r.label] += 1
        assert [hist[l] for l in VeracityLabel] == [40, 30, 20, 10]

    def test_overlap_structure(self):
        corpus = ds.generate_fixture(40, (1, 1, 1, 1), seed=12)
        from hifactmix.text import tokenize_whitespace

        for rec in corpus.records:
            claim = set(tokenize_whitespace(rec.claim.text))
            ev = set(tokenize_whitespace(rec.evidence.text))
            if rec.label == VeracityLabel.UNVERIFIED:
                assert not (claim & ev)
            else:
                assert claim & ev

    def test_bad_weights(self):
        with pytest.raises(BadWeightsError):
            ds.generate_fixture(10, (0, 0, 0, 0), seed=1)
