"""Prompt construction and explanation generation.

Two generators behind one surface (`generate(prompt) -> str`): a
deterministic template generator for tests/offline use, and an HTTP client
for an out-of-process instruction-tuned text generator.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import requests

from .errors import EmptyTextError, ProtocolError, RemoteError, TransportError
from .types import VeracityLabel

LABEL_PHRASES = {
    VeracityLabel.TRUE: "true",
    VeracityLabel.FALSE: "false",
    VeracityLabel.PARTIALLY_TRUE: "partially true",
    VeracityLabel.UNVERIFIED: "unverified",
}

_VERBS = {
    VeracityLabel.TRUE: "supports",
    VeracityLabel.FALSE: "contradicts",
    VeracityLabel.PARTIALLY_TRUE: "partially supports",
    VeracityLabel.UNVERIFIED: "neither supports nor refutes",
}

_PROMPT_PREFIX = "Explain why the claim is "
_EVIDENCE_SEP = "\nEvidence: "


def build_prompt(claim_text: str, evidence_text: str, label: VeracityLabel) -> str:
    """`Explain why the claim is <phrase>: <claim>\\nEvidence: <evidence>`.

    The verdict phrase is wired into the prompt: asking a generator why a
    claim is false when the verdict was true would be incoherent.
    """
    if not claim_text.strip() or not evidence_text.strip():
        raise EmptyTextError("claim and evidence must be non-empty")
    phrase = LABEL_PHRASES[label]
    return f"{_PROMPT_PREFIX}{phrase}: {claim_text}{_EVIDENCE_SEP}{evidence_text}"


def parse_prompt(prompt: str) -> tuple[str, str, VeracityLabel]:
    """Invert build_prompt. Used by the reference generator so it can share
    the generate(prompt) interface with the remote one."""
    if _EVIDENCE_SEP not in prompt or not prompt.startswith(_PROMPT_PREFIX):
        raise EmptyTextError("prompt does not match the claim/evidence template")
    head, evidence = prompt.split(_EVIDENCE_SEP, 1)
    rest = head[len(_PROMPT_PREFIX):]
    for label, phrase in LABEL_PHRASES.items():
        if rest.startswith(phrase + ": "):
            return rest[len(phrase) + 2:], evidence, label
    raise EmptyTextError("prompt contains no known verdict phrase")


class ReferenceGenerator:
    """Deterministic template explanation. Quotes (up to) the first 30
    whitespace tokens of the evidence verbatim, which guarantees lexical
    overlap with the evidence and therefore nonzero ROUGE-L downstream."""

    def generate(self, prompt: str) -> str:
        _claim, evidence, label = parse_prompt(prompt)
        if not evidence.strip():
            raise EmptyTextError("evidence must be non-empty")
        snippet = " ".join(evidence.split()[:30])
        return (
            f"The claim is assessed as {LABEL_PHRASES[label]}. "
            f'The retrieved evidence states: "{snippet}". '
            f"This {_VERBS[label]} the claim."
        )


@dataclass(frozen=True)
class GeneratorConfig:
    remote_endpoint: str
    timeout_ms: int = 30_000
    max_new_tokens: int = 128
    max_concurrent: int = 8


class RemoteGenerator:
    """Client for the remote generation service.

    Protocol: POST {"prompt": str, "max_new_tokens": int} -> {"text": str}.
    """

    def __init__(self, config: GeneratorConfig):
        if not config.remote_endpoint:
            raise ValueError("remote_endpoint must be configured")
        self.config = config
        self._gate = threading.Semaphore(config.max_concurrent)
        self._session = requests.Session()

    def generate(self, prompt: str) -> str:
        timeout = self.config.timeout_ms / 1000.0
        with self._gate:
            try:
                resp = self._session.post(
                    self.config.remote_endpoint,
                    json={"prompt": prompt, "max_new_tokens": self.config.max_new_tokens},
                    timeout=timeout,
                )
            except requests.RequestException as e:
                raise TransportError(f"generation request failed: {e}") from e
        if not (200 <= resp.status_code < 300):
            raise RemoteError(resp.status_code, resp.text)
        try:
            payload = resp.json()
        except ValueError:
            raise ProtocolError("generation response is not JSON") from None
        text = payload.get("text") if isinstance(payload, dict) else None
        if not isinstance(text, str) or not text.strip():
            raise ProtocolError("generation response has no non-empty 'text'")
        return text.strip()
