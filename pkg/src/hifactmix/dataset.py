"""Corpus ingestion, stratified splitting, statistics, and the synthetic
fixture generator that stands in for the (unreleased) annotated corpus.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .errors import (
    BadRatiosError,
    BadWeightsError,
    EmptyCorpusError,
    ParseError,
    UnknownLabelError,
    ValidationError,
)
from .rng import SplitMix64
from .text import code_mix_ratio, tokenize_whitespace
from .types import AnnotatedClaim, Claim, EvidenceDoc, VeracityLabel

_RECORD_FIELDS = (
    "id",
    "claim_text",
    "speaker",
    "state",
    "date",
    "evidence_id",
    "evidence_text",
    "evidence_url",
    "label",
    "gold_explanation",
)


@dataclass(frozen=True)
class Corpus:
    records: tuple[AnnotatedClaim, ...]
    source_path: str = ""

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class SplitAssignment:
    train_ids: tuple[str, ...]
    val_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int
    ratios: tuple[float, float, float]

    def ids_for(self, name: str) -> tuple[str, ...]:
        try:
            return {"train": self.train_ids, "val": self.val_ids, "test": self.test_ids}[name]
        except KeyError:
            from .errors import UnknownSplitError

            raise UnknownSplitError(f"unknown split {name!r}") from None


@dataclass(frozen=True)
class CorpusStats:
    n_records: int
    avg_claim_tokens: float
    avg_evidence_tokens: float
    claim_english_ratio: float
    evidence_english_ratio: float
    label_histogram: dict[VeracityLabel, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_records": self.n_records,
            "avg_claim_tokens": self.avg_claim_tokens,
            "avg_evidence_tokens": self.avg_evidence_tokens,
            "claim_english_ratio": self.claim_english_ratio,
            "evidence_english_ratio": self.evidence_english_ratio,
            "label_histogram": {l.canonical: self.label_histogram.get(l, 0) for l in VeracityLabel},
        }


def record_to_dict(rec: AnnotatedClaim) -> dict:
    return {
        "id": rec.claim.id,
        "claim_text": rec.claim.text,
        "speaker": rec.claim.speaker,
        "state": rec.claim.state,
        "date": rec.claim.date,
        "evidence_id": rec.evidence.id,
        "evidence_text": rec.evidence.text,
        "evidence_url": rec.evidence.url,
        "label": rec.label.canonical,
        "gold_explanation": rec.gold_explanation,
    }


def _record_from_dict(obj: dict, line_no: int) -> AnnotatedClaim:
    missing = [k for k in _RECORD_FIELDS if k not in obj]
    if missing:
        raise ParseError(line_no, f"missing fields: {', '.join(missing)}")
    rec_id = str(obj["id"])
    try:
        label = VeracityLabel.parse(str(obj["label"]))
    except UnknownLabelError as e:
        raise ValidationError(rec_id, str(e)) from None
    claim = Claim(
        id=rec_id,
        text=str(obj["claim_text"]),
        speaker=str(obj["speaker"] or ""),
        state=str(obj["state"] or ""),
        date=str(obj["date"] or ""),
    )
    evidence = EvidenceDoc(
        id=str(obj["evidence_id"]),
        text=str(obj["evidence_text"]),
        url=str(obj["evidence_url"] or ""),
    )
    gold = obj["gold_explanation"]
    return AnnotatedClaim(claim=claim, evidence=evidence, label=label,
                          gold_explanation=None if gold is None else str(gold))


def load_corpus(path: str) -> Corpus:
    """Load a line-delimited UTF-8 corpus file. Each line is one JSON object
    with the fields of `record_to_dict`. Raises ParseError with the line
    number for malformed lines and ValidationError for invariant breaks
    (including duplicate claim ids)."""
    records: list[AnnotatedClaim] = []
    seen_ids: set[str] = set()
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(line_no, f"invalid JSON: {e.msg}") from None
            if not isinstance(obj, dict):
                raise ParseError(line_no, "expected a JSON object")
            rec = _record_from_dict(obj, line_no)
            if rec.claim.id in seen_ids:
                raise ValidationError(rec.claim.id, "duplicate claim id")
            seen_ids.add(rec.claim.id)
            records.append(rec)
    return Corpus(records=tuple(records), source_path=str(path))


def save_corpus(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for rec in corpus.records:
            f.write(json.dumps(record_to_dict(rec), ensure_ascii=False, sort_keys=True))
            f.write("\n")


def corpus_stats(corpus: Corpus, lexicon: set[str]) -> CorpusStats:
    """Token-weighted corpus statistics: the English ratios are total
    English tokens over total tokens, not per-record averages."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot compute statistics of an empty corpus")
    claim_tokens = [tokenize_whitespace(r.claim.text) for r in corpus.records]
    ev_tokens = [tokenize_whitespace(r.evidence.text) for r in corpus.records]
    all_claim = [t for toks in claim_tokens for t in toks]
    all_ev = [t for toks in ev_tokens for t in toks]
    hist: dict[VeracityLabel, int] = {l: 0 for l in VeracityLabel}
    for r in corpus.records:
        hist[r.label] += 1
    return CorpusStats(
        n_records=len(corpus),
        avg_claim_tokens=len(all_claim) / len(corpus),
        avg_evidence_tokens=len(all_ev) / len(corpus),
        claim_english_ratio=code_mix_ratio(all_claim, lexicon),
        evidence_english_ratio=code_mix_ratio(all_ev, lexicon),
        label_histogram=hist,
    )


def largest_remainder(total: int, weights: list[float]) -> list[int]:
    """Apportion `total` into integer counts proportional to `weights`,
    by largest remainder. Ties go to the earlier position."""
    s = sum(weights)
    if s <= 0 or any(w < 0 for w in weights):
        raise BadWeightsError("weights must be non-negative and not all zero")
    exact = [total * w / s for w in weights]
    counts = [int(e) for e in exact]
    remainder = total - sum(counts)
    # Sort positions by fractional part descending; stable sort keeps
    # earlier positions first on ties.
    order = sorted(range(len(weights)), key=lambda i: -(exact[i] - counts[i]))
    for i in order[:remainder]:
        counts[i] += 1
    return counts


def stratified_split(
    corpus: Corpus,
    ratios: tuple[float, float, float],
    seed: int,
) -> SplitAssignment:
    """Label-stratified train/val/test split. Within each label group the
    records are shuffled by a seeded splitmix64 stream and apportioned by
    largest remainder, so the assignment is bit-reproducible for a fixed
    (corpus order, seed)."""
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot split an empty corpus")
    if any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise BadRatiosError(f"ratios must be non-negative and sum to 1, got {ratios}")

    groups: dict[VeracityLabel, list[str]] = {l: [] for l in VeracityLabel}
    for rec in corpus.records:
        groups[rec.label].append(rec.claim.id)

    rng = SplitMix64(seed)
    buckets: tuple[list[str], list[str], list[str]] = ([], [], [])
    for label in VeracityLabel:  # fixed label order keeps the stream stable
        ids = groups[label]
        rng.shuffle(ids)
        n_train, n_val, n_test = largest_remainder(len(ids), list(ratios))
        buckets[0].extend(ids[:n_train])
        buckets[1].extend(ids[n_train:n_train + n_val])
        buckets[2].extend(ids[n_train + n_val:])
    return SplitAssignment(
        train_ids=tuple(buckets[0]),
        val_ids=tuple(buckets[1]),
        test_ids=tuple(buckets[2]),
        seed=seed,
        ratios=tuple(ratios),
    )


def save_split(split: SplitAssignment, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    for name in ("train", "val", "test"):
        with open(os.path.join(out_dir, f"{name}.txt"), "w", encoding="utf-8") as f:
            for i in split.ids_for(name):
                f.write(i + "\n")


def load_split(out_dir: str, seed: int = 0,
               ratios: tuple[float, float, float] = (0.0, 0.0, 0.0)) -> SplitAssignment:
    parts = []
    for name in ("train", "val", "test"):
        with open(os.path.join(out_dir, f"{name}.txt"), "r", encoding="utf-8") as f:
            parts.append(tuple(line.strip() for line in f if line.strip()))
    return SplitAssignment(train_ids=parts[0], val_ids=parts[1], test_ids=parts[2],
                           seed=seed, ratios=ratios)


# --- synthetic fixture ------------------------------------------------------

_EN_CLAIM_WORDS = (
    "government built roads schools hospitals farmers received free electricity "
    "water supply jobs development scheme launched budget funds welfare pension "
    "education health power houses villages district state percent growth"
).split()

_HI_CLAIM_WORDS = (
    "sarkar ne banaya sadak vidyalaya aspataal kisan mila muft bijli paani "
    "naukri vikas yojana shuru kiya paisa gaon rajya zila hazaar lakh karod "
    "garib logon bola kaha vaada poora hua nahi abhi tak"
).split()

# Reserved for Unverified evidence only, so it never overlaps claim text.
_EN_NEUTRAL_WORDS = (
    "archive registry bulletin gazette circular memo ledger catalogue "
    "almanac chronicle compendium docket manifest roster"
).split()

_HI_NEUTRAL_WORDS = (
    "patrika soochna vibhag karyalaya adhikari niyamavali parishad "
    "granth lekh vivaran patr suchi"
).split()

# One strong marker token per label, embedded in evidence sentences so a
# classifier over claim+evidence features has signal the claim alone lacks.
_EVIDENCE_MARKERS = {
    VeracityLabel.TRUE: "satyapit",
    VeracityLabel.FALSE: "khandit",
    VeracityLabel.PARTIALLY_TRUE: "aanshik",
    VeracityLabel.UNVERIFIED: "apushta",
}

_SPEAKERS = (
    "CM Sharma", "CM Verma", "CM Reddy", "CM Singh", "CM Patel",
    "CM Das", "CM Yadav", "CM Khan",
)
_STATES = (
    "Uttar Pradesh", "Maharashtra", "Bihar", "Telangana", "Gujarat",
    "Odisha", "Punjab", "Kerala",
)


def _pick(rng: SplitMix64, pool: list[str]) -> str:
    return pool[rng.next_below(len(pool))]


def _claim_tokens(rng: SplitMix64, english_ratio_target: float) -> list[str]:
    n = 10 + rng.next_below(9)  # 10..18, mean ~14 tokens
    toks = []
    for _ in range(n):
        if rng.next_float() < english_ratio_target:
            toks.append(_pick(rng, _EN_CLAIM_WORDS))
        else:
            toks.append(_pick(rng, _HI_CLAIM_WORDS))
    return toks


def _evidence_tokens(rng: SplitMix64, claim_toks: list[str],
                     label: VeracityLabel, english_ratio_target: float) -> list[str]:
    marker = _EVIDENCE_MARKERS[label]
    filler_en, filler_hi = _EN_NEUTRAL_WORDS, _HI_NEUTRAL_WORDS
    if label in (VeracityLabel.TRUE, VeracityLabel.FALSE):
        base = list(claim_toks)  # high lexical overlap
    elif label is VeracityLabel.PARTIALLY_TRUE:
        base = claim_toks[: max(1, len(claim_toks) // 2)]
    else:  # Unverified: drawn only from the reserved pools, no overlap
        base = []
    target_len = 24 + rng.next_below(12)  # around the 34.8-token average
    while len(base) < target_len - 3:
        pool = filler_en if rng.next_float() < english_ratio_target else filler_hi
        base.append(_pick(rng, pool))
    return base + [marker, marker, marker]


def generate_fixture(
    n: int,
    label_weights: tuple[float, float, float, float],
    english_ratio_target: float = 0.55,
    seed: int = 0,
) -> Corpus:
    """Deterministic synthetic corpus with retrieval and classification
    signal by construction: True/False evidence lexically overlaps its
    claim, PartiallyTrue partially, Unverified not at all, and every
    evidence sentence carries a label marker token."""
    if n < 1:
        raise BadWeightsError("n must be at least 1")
    counts = largest_remainder(n, list(label_weights))

    rng = SplitMix64(seed)
    labels: list[VeracityLabel] = []
    for label, c in zip(VeracityLabel, counts):
        labels.extend([label] * c)
    rng.shuffle(labels)

    records = []
    for i, label in enumerate(labels):
        claim_toks = _claim_tokens(rng, english_ratio_target)
        ev_toks = _evidence_tokens(rng, claim_toks, label, english_ratio_target)
        claim_text = " ".join(claim_toks).capitalize() + "."
        ev_text = " ".join(ev_toks).capitalize() + "."
        speaker = _pick(rng, list(_SPEAKERS))
        state = _pick(rng, list(_STATES))
        day = 1 + rng.next_below(28)
        month = 1 + rng.next_below(12)
        claim = Claim(
            id=f"c{i + 1:04d}",
            text=claim_text,
            speaker=speaker,
            state=state,
            date=f"2024-{month:02d}-{day:02d}",
        )
        evidence = EvidenceDoc(
            id=f"e{i + 1:04d}",
            text=ev_text,
            url=f"https://example.org/evidence/{i + 1}",
        )
        phrase = {"partially_true": "partially true"}.get(label.canonical, label.canonical)
        gold = (
            f"Fact check: the claim is {phrase} because official records state "
            f"{' '.join(ev_toks[:8])}."
        )
        records.append(AnnotatedClaim(claim=claim, evidence=evidence,
                                      label=label, gold_explanation=gold))
    return Corpus(records=tuple(records), source_path="<fixture>")
