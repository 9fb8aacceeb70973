"""Generate a synthetic Hinglish claim corpus and inspect it.

The fixture generator produces code-mixed claims with paired evidence
documents whose token overlap encodes the veracity label, so the corpus
is learnable end to end without any external data.
"""

from hifactmix import corpus_stats, generate_fixture, load_english_lexicon

corpus = generate_fixture(n=200, label_weights=(1, 1, 1, 1),
                          english_ratio_target=0.55, seed=42)

print(f"{len(corpus)} records, first claim:")
rec = corpus.records[0]
print(f"  id={rec.claim.id} label={rec.label.canonical}")
print(f"  claim:    {rec.claim.text}")
print(f"  evidence: {rec.evidence.text}")
print()

stats = corpus_stats(corpus, load_english_lexicon())
print("label histogram:",
      {label.canonical: n for label, n in stats.label_histogram.items()})
print(f"mean claim tokens: {stats.avg_claim_tokens:.1f}")
print(f"token-weighted English ratio: {stats.claim_english_ratio:.3f}")
