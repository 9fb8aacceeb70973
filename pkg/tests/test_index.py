import numpy as np
import pytest

from hifactmix.errors import (
    DimensionMismatchError,
    DuplicateIdError,
    EmptyIndexError,
    FormatError,
)
from hifactmix.index import FlatIndex
from hifactmix.types import EMBED_DIM


def scan_oracle(entries, query, k):
    """Independent full scan: python loop, float64 accumulation."""
    q = np.asarray(query, dtype=np.float64)
    dists = []
    for pos, (eid, vec) in enumerate(entries):
        v = np.asarray(vec, dtype=np.float32).astype(np.float64)
        d = float(np.sum((q - v) ** 2))
        dists.append((d, pos, eid))
    dists.sort(key=lambda t: (t[0], t[1]))
    return dists[:k]


def basis(i, scale=1.0, dim=EMBED_DIM):
    v = np.zeros(dim)
    v[i] = scale
    return v


class TestAddSearch:
    def test_add_increments_count(self):
        idx = FlatIndex()
        idx.add("e1", basis(0))
        assert len(idx) == 1

    def test_duplicate_id(self):
        idx = FlatIndex()
        idx.add("e1", basis(0))
        with pytest.raises(DuplicateIdError):
            idx.add("e1", basis(1))

    def test_dimension_mismatch_add(self):
        idx = FlatIndex()
        with pytest.raises(DimensionMismatchError):
            idx.add("e1", np.zeros(769))

    def test_dimension_mismatch_query(self):
        idx = FlatIndex()
        idx.add("e1", basis(0))
        with pytest.raises(DimensionMismatchError):
            idx.search(np.zeros(767), k=1)

    def test_empty_index_search(self):
        with pytest.raises(EmptyIndexError):
            FlatIndex().search(np.zeros(EMBED_DIM), k=1)

    def test_identity_hit(self):
        idx = FlatIndex()
        idx.add("e1", basis(3))
        [hit] = idx.search(basis(3), k=1)
        assert hit.evidence_id == "e1"
        assert hit.distance == 0.0
        assert hit.rank == 0

    def test_k_clamped_to_count(self):
        idx = FlatIndex()
        for i in range(3):
            idx.add(f"e{i}", basis(i))
        assert len(idx.search(basis(0), k=10)) == 3

    def test_two_entry_hand_computed(self):
        # e1=(1,0,...), e2=(0,1,0,...), query=(1,0,...): distances 0 and 2
        idx = FlatIndex()
        idx.add("e1", basis(0))
        idx.add("e2", basis(1))
        hits = idx.search(basis(0), k=2)
        assert [(h.evidence_id, h.distance) for h in hits] == [("e1", 0.0), ("e2", 2.0)]

    def test_tie_break_by_insertion_order(self):
        idx = FlatIndex()
        idx.add("second-nearest-tie-b", basis(1))
        idx.add("a", basis(1))
        hits = idx.search(basis(2), k=2)
        assert [h.evidence_id for h in hits] == ["second-nearest-tie-b", "a"]

    def test_monotone_distances_and_oracle(self):
        rng = np.random.RandomState(0)
        entries = [(f"e{i}", rng.randn(EMBED_DIM)) for i in range(100)]
        idx = FlatIndex()
        for eid, v in entries:
            idx.add(eid, v)
        for _ in range(10):
            q = rng.randn(EMBED_DIM)
            hits = idx.search(q, k=7)
            assert all(hits[i].distance <= hits[i + 1].distance for i in range(6))
            oracle = scan_oracle(entries, q, 7)
            for hit, (d, _pos, eid) in zip(hits, oracle):
                assert hit.evidence_id == eid
                assert abs(hit.distance - d) < 1e-9

    def test_distance_symmetry(self):
        # round both vectors to storage precision so the only variable is
        # which side sits in the index
        rng = np.random.RandomState(1)
        for _ in range(20):
            a = rng.randn(EMBED_DIM).astype(np.float32).astype(np.float64)
            b = rng.randn(EMBED_DIM).astype(np.float32).astype(np.float64)
            idx_a, idx_b = FlatIndex(), FlatIndex()
            idx_a.add("x", a)
            idx_b.add("x", b)
            d_ab = idx_a.search(b, k=1)[0].distance
            d_ba = idx_b.search(a, k=1)[0].distance
            assert abs(d_ab - d_ba) < 1e-12

    def test_self_retrieval(self):
        rng = np.random.RandomState(2)
        idx = FlatIndex()
        vecs = [rng.randn(EMBED_DIM) for _ in range(30)]
        for i, v in enumerate(vecs):
            idx.add(f"e{i}", v)
        for i, v in enumerate(vecs):
            [hit] = idx.search(idx.vector(f"e{i}"), k=1)
            assert hit.evidence_id == f"e{i}"
            assert hit.distance <= 1e-9


class TestPersistence:
    def test_round_trip_search_identical(self, tmp_path):
        rng = np.random.RandomState(3)
        idx = FlatIndex()
        for i in range(100):
            idx.add(f"doc-{i}", rng.randn(EMBED_DIM))
        path = str(tmp_path / "index.hfix")
        idx.save(path)
        loaded = FlatIndex.load(path)
        assert len(loaded) == 100
        for _ in range(20):
            q = rng.randn(EMBED_DIM)
            a = idx.search(q, k=5)
            b = loaded.search(q, k=5)
            assert [(h.evidence_id, h.distance, h.rank) for h in a] == [
                (h.evidence_id, h.distance, h.rank) for h in b
            ]

    def test_empty_round_trip(self, tmp_path):
        path = str(tmp_path / "empty.hfix")
        FlatIndex().save(path)
        assert len(FlatIndex.load(path)) == 0

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.hfix"
        path.write_bytes(b"NOPE" + b"\x00" * 32)
        with pytest.raises(FormatError) as exc:
            FlatIndex.load(str(path))
        assert exc.value.offset == 0

    def test_truncated_file(self, tmp_path):
        idx = FlatIndex()
        idx.add("e1", np.ones(EMBED_DIM))
        path = tmp_path / "trunc.hfix"
        idx.save(str(path))
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) - 100])
        with pytest.raises(FormatError):
            FlatIndex.load(str(path))

    def test_unicode_ids_survive(self, tmp_path):
        idx = FlatIndex()
        idx.add("साक्ष्य-1", np.ones(EMBED_DIM))
        path = str(tmp_path / "u.hfix")
        idx.save(path)
        assert FlatIndex.load(path).ids == ["साक्ष्य-1"]
