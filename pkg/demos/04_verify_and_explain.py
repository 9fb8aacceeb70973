"""Verify a single claim: retrieve evidence, classify, explain, score.

Shows the full single-claim path and the generated natural-language
explanation with its ROUGE-L overlap against the retrieved evidence.
"""

import hifactmix.pipeline as pl
from hifactmix import (
    ReferenceEncoder,
    ReferenceGenerator,
    TrainConfig,
    generate_fixture,
    stratified_split,
)

corpus = generate_fixture(n=120, label_weights=(1, 1, 1, 1), seed=42)
split = stratified_split(corpus, (0.7, 0.1, 0.2), seed=7)
artifacts = pl.build_artifacts(
    corpus, split, ReferenceEncoder(), ReferenceGenerator(),
    TrainConfig(seed=1, max_epochs=20, hidden_width=64, learning_rate=0.05),
    mode=pl.CONCATENATED,
)

for rec in corpus.records[:3]:
    result = pl.verify(artifacts, rec.claim.text)
    print(f"claim:       {rec.claim.text}")
    print(f"gold label:  {rec.label.canonical}")
    print(f"predicted:   {result.label.canonical}  "
          f"(confidence {result.confidence:.2f})")
    print(f"evidence:    {result.evidence_id}  "
          f"dist={result.retrieval_distance:.4f}")
    print(f"explanation: {result.explanation}")
    print(f"rouge-l vs evidence: {result.rouge_l:.3f}")
    print()
