"""Tokenization and language-mix measurement for code-mixed text."""

from __future__ import annotations

import string
from importlib import resources

_ASCII_PUNCT = string.punctuation

_DEV_LO, _DEV_HI = 0x0900, 0x097F  # Devanagari block


def tokenize_whitespace(text: str) -> list[str]:
    """Lowercase, split on Unicode whitespace, strip ASCII punctuation from
    token edges, drop empties. This is the single tokenizer used for corpus
    statistics, ROUGE/BLEU, and the hashing encoder."""
    tokens = []
    for raw in text.lower().split():
        tok = raw.strip(_ASCII_PUNCT)
        if tok:
            tokens.append(tok)
    return tokens


def _is_latin(token: str) -> bool:
    # Basic Latin through Latin Extended-B covers romanized Hinglish.
    return all(ord(c) < 0x250 for c in token)


def _has_devanagari(token: str) -> bool:
    return any(_DEV_LO <= ord(c) <= _DEV_HI for c in token)


def code_mix_ratio(tokens: list[str], lexicon: set[str]) -> float:
    """Fraction of tokens classified as English: entirely Latin-script and
    present in the lexicon. Tokens containing Devanagari never count.
    Empty input yields 0."""
    if not tokens:
        return 0.0
    english = sum(
        1
        for t in tokens
        if not _has_devanagari(t) and _is_latin(t) and t in lexicon
    )
    return english / len(tokens)


def load_english_lexicon() -> set[str]:
    """The embedded English word list shipped with the package."""
    data = resources.files("hifactmix.data").joinpath("english_lexicon.txt")
    return set(data.read_text(encoding="utf-8").split())
