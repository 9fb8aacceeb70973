"""Shared domain types: veracity labels, claims, evidence, results.

All types are immutable values and safe to share between threads.
The canonical lowercase label strings are the wire/disk representation
everywhere in the system.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import IntEnum

from .errors import UnknownLabelError, ValidationError

EMBED_DIM = 768
N_LABELS = 4


class VeracityLabel(IntEnum):
    """Four-way veracity verdict with stable integer codes 0..3."""

    TRUE = 0
    FALSE = 1
    PARTIALLY_TRUE = 2
    UNVERIFIED = 3

    @property
    def canonical(self) -> str:
        return _CANONICAL[self]

    @classmethod
    def parse(cls, s: str) -> "VeracityLabel":
        """Case-insensitive parse of a canonical form or known alias.

        "partially false" is rejected on purpose: it is not part of the
        label vocabulary and accepting it would silently mislabel data.
        """
        key = s.strip().lower()
        try:
            return _PARSE_TABLE[key]
        except KeyError:
            raise UnknownLabelError(s) from None


_CANONICAL = {
    VeracityLabel.TRUE: "true",
    VeracityLabel.FALSE: "false",
    VeracityLabel.PARTIALLY_TRUE: "partially_true",
    VeracityLabel.UNVERIFIED: "unverified",
}

_PARSE_TABLE = {v: k for k, v in _CANONICAL.items()}
_PARSE_TABLE["partially true"] = VeracityLabel.PARTIALLY_TRUE
_PARSE_TABLE["partly true"] = VeracityLabel.PARTIALLY_TRUE

LABEL_ORDER = [l.canonical for l in VeracityLabel]


@dataclass(frozen=True)
class Claim:
    id: str
    text: str
    speaker: str = ""
    state: str = ""
    date: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValidationError(self.id, "claim id must be non-empty")
        if not self.text.strip():
            raise ValidationError(self.id, "claim text must be non-empty")


@dataclass(frozen=True)
class EvidenceDoc:
    id: str
    text: str
    url: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValidationError(self.id, "evidence id must be non-empty")
        if not self.text.strip():
            raise ValidationError(self.id, "evidence text must be non-empty")


@dataclass(frozen=True)
class AnnotatedClaim:
    claim: Claim
    evidence: EvidenceDoc
    label: VeracityLabel
    gold_explanation: str | None = None


@dataclass(frozen=True)
class FactCheckResult:
    """Full output of one verification: verdict, provenance, explanation."""

    label: VeracityLabel
    confidence: float
    class_probabilities: tuple[float, float, float, float]
    evidence_id: str
    evidence_text: str
    evidence_url: str
    retrieval_distance: float
    explanation: str
    rouge_l: float

    def __post_init__(self):
        probs = self.class_probabilities
        if len(probs) != N_LABELS:
            raise ValidationError("", f"expected {N_LABELS} probabilities")
        if abs(sum(probs) - 1.0) > 1e-6:
            raise ValidationError("", f"probabilities sum to {sum(probs)}, not 1")
        if not math.isclose(self.confidence, max(probs), abs_tol=1e-12):
            raise ValidationError("", "confidence must equal max probability")
        if self.retrieval_distance < 0:
            raise ValidationError("", "retrieval distance must be non-negative")

    def to_dict(self) -> dict:
        return {
            "label": self.label.canonical,
            "confidence": self.confidence,
            "class_probabilities": list(self.class_probabilities),
            "evidence_id": self.evidence_id,
            "evidence_text": self.evidence_text,
            "evidence_url": self.evidence_url,
            "retrieval_distance": self.retrieval_distance,
            "explanation": self.explanation,
            "rouge_l": self.rouge_l,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)
