"""Exact flat nearest-neighbor index over evidence embeddings.

Distances are squared L2 (no square root), matching flat-index convention:
ordering is identical and the root is wasted work. Callers that surface the
distance (FactCheckResult.retrieval_distance) surface the squared value.

Vectors are stored as float32 (the on-disk precision); distance accumulation
happens in float64. Ties are broken by insertion order, so search results
are fully deterministic.

On-disk format (little-endian):
    magic "HFIX" | u32 version=1 | u32 dim | u64 count |
    per entry: u32 id-byte-length | UTF-8 id bytes | dim x f32
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    EmptyIndexError,
    FormatError,
)
from .types import EMBED_DIM

_MAGIC = b"HFIX"
_VERSION = 1


class SearchHit:
    __slots__ = ("evidence_id", "distance", "rank")

    def __init__(self, evidence_id: str, distance: float, rank: int):
        self.evidence_id = evidence_id
        self.distance = distance
        self.rank = rank

    def __repr__(self):
        return f"SearchHit({self.evidence_id!r}, {self.distance!r}, rank={self.rank})"

    def __eq__(self, other):
        return (
            isinstance(other, SearchHit)
            and self.evidence_id == other.evidence_id
            and self.distance == other.distance
            and self.rank == other.rank
        )


class FlatIndex:
    def __init__(self, dim: int = EMBED_DIM):
        self.dim = dim
        self._ids: list[str] = []
        self._id_set: set[str] = set()
        self._vectors: list[np.ndarray] = []  # float32 rows
        self._matrix: np.ndarray | None = None  # cached float64 stack

    def __len__(self) -> int:
        return len(self._ids)

    @property
    def ids(self) -> list[str]:
        return list(self._ids)

    def vector(self, evidence_id: str) -> np.ndarray:
        """Stored float32 vector for an id, as float64."""
        i = self._ids.index(evidence_id)
        return self._vectors[i].astype(np.float64)

    def add(self, evidence_id: str, vector) -> None:
        vec = np.asarray(vector, dtype=np.float32)
        if vec.shape != (self.dim,):
            raise DimensionMismatchError(int(np.prod(vec.shape)), self.dim)
        if evidence_id in self._id_set:
            raise DuplicateIdError(evidence_id)
        self._ids.append(evidence_id)
        self._id_set.add(evidence_id)
        self._vectors.append(vec)
        self._matrix = None

    def _stacked(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = np.stack(self._vectors).astype(np.float64)
        return self._matrix

    def search(self, query, k: int = 1) -> list[SearchHit]:
        """Exact top-k by squared L2, ties broken by insertion order."""
        q = np.asarray(query, dtype=np.float64)
        if q.shape != (self.dim,):
            raise DimensionMismatchError(int(np.prod(q.shape)), self.dim)
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self._ids:
            raise EmptyIndexError("search on an empty index")
        diff = self._stacked() - q
        dists = np.einsum("ij,ij->i", diff, diff)
        order = np.argsort(dists, kind="stable")[: min(k, len(self._ids))]
        return [
            SearchHit(self._ids[i], float(dists[i]), rank)
            for rank, i in enumerate(order)
        ]

    # --- persistence -------------------------------------------------------

    def save(self, path: str) -> None:
        with open(path, "wb") as f:
            f.write(_MAGIC)
            f.write(struct.pack("<IIQ", _VERSION, self.dim, len(self._ids)))
            for eid, vec in zip(self._ids, self._vectors):
                raw = eid.encode("utf-8")
                f.write(struct.pack("<I", len(raw)))
                f.write(raw)
                f.write(vec.astype("<f4").tobytes())

    @classmethod
    def load(cls, path: str) -> "FlatIndex":
        with open(path, "rb") as f:
            blob = f.read()
        if blob[:4] != _MAGIC:
            raise FormatError(f"bad magic {blob[:4]!r}", offset=0)
        off = 4
        try:
            version, dim, count = struct.unpack_from("<IIQ", blob, off)
        except struct.error:
            raise FormatError("truncated header", offset=off) from None
        if version != _VERSION:
            raise FormatError(f"unsupported version {version}", offset=4)
        off += 16
        index = cls(dim=dim)
        for _ in range(count):
            try:
                (id_len,) = struct.unpack_from("<I", blob, off)
            except struct.error:
                raise FormatError("truncated entry header", offset=off) from None
            off += 4
            if off + id_len + 4 * dim > len(blob):
                raise FormatError("truncated entry", offset=off)
            eid = blob[off:off + id_len].decode("utf-8")
            off += id_len
            vec = np.frombuffer(blob, dtype="<f4", count=dim, offset=off).copy()
            off += 4 * dim
            index.add(eid, vec)
        if off != len(blob):
            raise FormatError("trailing bytes after last entry", offset=off)
        return index
