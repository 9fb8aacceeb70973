"""Embed texts with the hashing encoder and search a flat L2 index.

The reference encoder is a deterministic 768-dimensional feature-hashing
bag of words (FNV-1a 64-bit, signed coordinates, L2-normalized). The
index stores float32 vectors and does an exact squared-L2 scan.
"""

import tempfile

from hifactmix import FlatIndex, ReferenceEncoder, generate_fixture

encoder = ReferenceEncoder()
corpus = generate_fixture(n=50, label_weights=(1, 1, 1, 1), seed=7)

index = FlatIndex()
for rec in corpus.records:
    index.add(rec.evidence.id, encoder.encode(rec.evidence.text))
print(f"indexed {len(index)} evidence vectors of dim {encoder.dim}")

query = corpus.records[0].claim.text
print(f"\nquery claim: {query}")
for hit in index.search(encoder.encode(query), k=3):
    print(f"  {hit.evidence_id}  dist={hit.distance:.4f}")

# binary round trip is bit-exact
with tempfile.NamedTemporaryFile(suffix=".hfix") as f:
    index.save(f.name)
    reloaded = FlatIndex.load(f.name)
print(f"\nreloaded index holds {len(reloaded)} vectors, "
      f"same top hit: "
      f"{reloaded.search(encoder.encode(query), k=1)[0].evidence_id}")
