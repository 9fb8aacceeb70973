"""End-to-end orchestration: artifact assembly, single-claim verification,
split evaluation, and the retrieval ablation.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .classifier import MLPParams, TrainConfig, TrainReport, predict, train
from .dataset import Corpus, SplitAssignment
from .errors import (
    EmptyTextError,
    HifactError,
    ModeMismatchError,
    StageError,
)
from .explanation import build_prompt
from .index import FlatIndex
from .metrics import BleuConfig, accuracy, corpus_bleu, macro_f1, rouge_l
from .types import EMBED_DIM, N_LABELS, EvidenceDoc, FactCheckResult, VeracityLabel

CLAIM_ONLY = "claim_only"
CONCATENATED = "concatenated"


@dataclass
class PipelineArtifacts:
    encoder: object
    index: FlatIndex
    params: MLPParams
    generator: object
    evidence_store: dict[str, EvidenceDoc]
    mode: str = CLAIM_ONLY
    prompt_label_source: str = "predicted"
    train_report: TrainReport | None = None
    config_snapshot: dict = field(default_factory=dict)

    def fingerprint(self) -> str:
        blob = json.dumps(self.config_snapshot, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except HifactError as e:
        raise StageError(name, e) from e


def build_artifacts(
    corpus: Corpus,
    split: SplitAssignment,
    encoder,
    generator,
    train_config: TrainConfig,
    mode: str = CLAIM_ONLY,
    prompt_label_source: str = "predicted",
) -> PipelineArtifacts:
    """Encode all evidence into a flat index, encode train/val claims, and
    train the veracity head with early stopping on the validation split.

    In concatenated mode the classifier sees claim and gold-evidence
    embeddings stacked into one 1536-d feature vector; in claim-only mode
    (the default) it sees the 768-d claim embedding alone.
    """
    if mode not in (CLAIM_ONLY, CONCATENATED):
        raise ModeMismatchError(f"unknown mode {mode!r}")

    by_id = {rec.claim.id: rec for rec in corpus.records}

    index = FlatIndex(dim=EMBED_DIM)
    store: dict[str, EvidenceDoc] = {}

    def build_index():
        for rec in corpus.records:
            ev = rec.evidence
            if ev.id in store:
                if store[ev.id] == ev:
                    continue  # the same document cited by several claims
            index.add(ev.id, encoder.encode(ev.text))
            store[ev.id] = ev

    _stage("index-build", build_index)

    def features(rec) -> np.ndarray:
        claim_emb = encoder.encode(rec.claim.text)
        if mode == CLAIM_ONLY:
            return claim_emb
        return np.concatenate([claim_emb, encoder.encode(rec.evidence.text)])

    def encoded(ids) -> list[tuple[np.ndarray, VeracityLabel]]:
        return [(features(by_id[i]), by_id[i].label) for i in ids]

    train_xy = _stage("claim-encoding", encoded, split.train_ids)
    val_xy = _stage("claim-encoding", encoded, split.val_ids)

    input_dim = EMBED_DIM if mode == CLAIM_ONLY else 2 * EMBED_DIM
    params, report = _stage(
        "training", train, train_xy, val_xy, train_config, input_dim=input_dim
    )

    snapshot = {
        "mode": mode,
        "prompt_label_source": prompt_label_source,
        "seed": train_config.seed,
        "hidden_width": train_config.hidden_width,
        "learning_rate": train_config.learning_rate,
        "batch_size": train_config.batch_size,
        "max_epochs": train_config.max_epochs,
        "patience": train_config.patience,
        "encoder": type(encoder).__name__,
        "generator": type(generator).__name__,
        "split_seed": split.seed,
        "split_ratios": list(split.ratios),
    }
    return PipelineArtifacts(
        encoder=encoder,
        index=index,
        params=params,
        generator=generator,
        evidence_store=store,
        mode=mode,
        prompt_label_source=prompt_label_source,
        train_report=report,
        config_snapshot=snapshot,
    )


def verify(
    artifacts: PipelineArtifacts,
    claim_text: str,
    prompt_label: VeracityLabel | None = None,
    _zero_evidence: bool = False,
) -> FactCheckResult:
    """One full verification: encode, classify, retrieve top-1 evidence,
    generate an explanation, and score it against the evidence.

    The claim embedding is computed once and reused for classification and
    retrieval. In concatenated mode retrieval necessarily runs before
    classification, because the classifier input includes the retrieved
    evidence vector.
    """
    if not claim_text.strip():
        raise EmptyTextError("claim must be non-empty")

    claim_emb = _stage("encoding", artifacts.encoder.encode, claim_text)
    hits = _stage("retrieval", artifacts.index.search, claim_emb, 1)
    top = hits[0]
    evidence = artifacts.evidence_store[top.evidence_id]

    if artifacts.mode == CONCATENATED:
        ev_vec = (
            np.zeros(EMBED_DIM)
            if _zero_evidence
            else artifacts.index.vector(top.evidence_id)
        )
        x = np.concatenate([claim_emb, ev_vec])
    else:
        x = claim_emb
    label, confidence, probs = _stage("classification", predict, artifacts.params, x)

    prompt = build_prompt(
        claim_text, evidence.text, prompt_label if prompt_label is not None else label
    )
    explanation = _stage("generation", artifacts.generator.generate, prompt)
    score = rouge_l(explanation, evidence.text).f1

    return FactCheckResult(
        label=label,
        confidence=confidence,
        class_probabilities=tuple(float(p) for p in probs),
        evidence_id=evidence.id,
        evidence_text=evidence.text,
        evidence_url=evidence.url,
        retrieval_distance=top.distance,
        explanation=explanation,
        rouge_l=score,
    )


@dataclass
class EvalReport:
    split_name: str
    n: int
    accuracy: float
    macro_f1: float
    per_class: dict[VeracityLabel, tuple[float, float, float]]
    confusion: list[list[int]]  # rows = gold code, cols = predicted code
    mean_rouge_l_vs_evidence: float
    mean_rouge_l_vs_gold: float | None
    corpus_bleu_vs_gold: float | None
    fingerprint: str

    def to_dict(self) -> dict:
        return {
            "split_name": self.split_name,
            "n": self.n,
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "per_class": {
                l.canonical: {"precision": p, "recall": r, "f1": f}
                for l, (p, r, f) in self.per_class.items()
            },
            "confusion": self.confusion,
            "mean_rouge_l_vs_evidence": self.mean_rouge_l_vs_evidence,
            "mean_rouge_l_vs_gold": self.mean_rouge_l_vs_gold,
            "corpus_bleu_vs_gold": self.corpus_bleu_vs_gold,
            "fingerprint": self.fingerprint,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text_table(self) -> str:
        lines = [
            f"split: {self.split_name}  n={self.n}  fingerprint={self.fingerprint}",
            f"{'metric':<28}{'value':>10}",
            f"{'accuracy':<28}{self.accuracy:>10.4f}",
            f"{'macro_f1':<28}{self.macro_f1:>10.4f}",
            f"{'rouge_l_vs_evidence':<28}{self.mean_rouge_l_vs_evidence:>10.4f}",
        ]
        if self.mean_rouge_l_vs_gold is not None:
            lines.append(f"{'rouge_l_vs_gold':<28}{self.mean_rouge_l_vs_gold:>10.4f}")
        if self.corpus_bleu_vs_gold is not None:
            lines.append(f"{'bleu_vs_gold':<28}{self.corpus_bleu_vs_gold:>10.4f}")
        lines.append("")
        lines.append(f"{'class':<18}{'P':>8}{'R':>8}{'F1':>8}")
        for label, (p, r, f) in self.per_class.items():
            lines.append(f"{label.canonical:<18}{p:>8.4f}{r:>8.4f}{f:>8.4f}")
        return "\n".join(lines)


def evaluate(
    artifacts: PipelineArtifacts,
    corpus: Corpus,
    split: SplitAssignment,
    which: str,
    _zero_evidence: bool = False,
) -> EvalReport:
    """Run verify over every record of the named split and aggregate."""
    ids = set(split.ids_for(which))
    records = [r for r in corpus.records if r.claim.id in ids]
    if not records:
        from .errors import EmptySetError

        raise EmptySetError(f"split {which!r} selects no records")

    gold: list[VeracityLabel] = []
    pred: list[VeracityLabel] = []
    rouge_vs_evidence: list[float] = []
    rouge_vs_gold: list[float] = []
    expl_with_gold: list[str] = []
    golds: list[str] = []
    confusion = [[0] * N_LABELS for _ in range(N_LABELS)]

    for rec in records:
        prompt_label = rec.label if artifacts.prompt_label_source == "gold" else None
        try:
            result = verify(artifacts, rec.claim.text, prompt_label=prompt_label,
                            _zero_evidence=_zero_evidence)
        except HifactError as e:
            raise StageError(f"evaluate:{rec.claim.id}", e) from e
        gold.append(rec.label)
        pred.append(result.label)
        confusion[int(rec.label)][int(result.label)] += 1
        rouge_vs_evidence.append(result.rouge_l)
        if rec.gold_explanation:
            rouge_vs_gold.append(rouge_l(result.explanation, rec.gold_explanation).f1)
            expl_with_gold.append(result.explanation)
            golds.append(rec.gold_explanation)

    macro, per_class = macro_f1(gold, pred)
    has_gold = bool(golds)
    return EvalReport(
        split_name=which,
        n=len(records),
        accuracy=accuracy(gold, pred),
        macro_f1=macro,
        per_class=per_class,
        confusion=confusion,
        mean_rouge_l_vs_evidence=sum(rouge_vs_evidence) / len(rouge_vs_evidence),
        mean_rouge_l_vs_gold=(sum(rouge_vs_gold) / len(rouge_vs_gold)) if has_gold else None,
        corpus_bleu_vs_gold=corpus_bleu(expl_with_gold, golds, BleuConfig()) if has_gold else None,
        fingerprint=artifacts.fingerprint(),
    )


def ablate_retrieval(
    artifacts: PipelineArtifacts,
    corpus: Corpus,
    split: SplitAssignment,
    which: str = "test",
) -> tuple[EvalReport, EvalReport, float]:
    """Evaluate with the retrieved-evidence half of the feature vector
    intact vs zeroed. Only meaningful for concatenated-mode artifacts.
    Returns (with_retrieval, without_retrieval, accuracy_delta)."""
    if artifacts.mode != CONCATENATED:
        raise ModeMismatchError("ablation requires concatenated-mode artifacts")
    with_report = evaluate(artifacts, corpus, split, which)
    without_report = evaluate(artifacts, corpus, split, which, _zero_evidence=True)
    return with_report, without_report, with_report.accuracy - without_report.accuracy
