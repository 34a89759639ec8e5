"""Stopword-ratio language detection for notice texts.

Scores each supported language by the fraction of its stopword list that
appears among the text's tokens; reporting-only, never used for detection
decisions.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

_TOKEN = re.compile(r"\w+", re.UNICODE)

MIN_TOKENS = 3
MIN_FRACTION = 0.02


@lru_cache(maxsize=1)
def _stopwords() -> dict[str, frozenset[str]]:
    raw = resources.files("consentscan.data").joinpath("stopwords.json").read_text("utf-8")
    return {lang: frozenset(words) for lang, words in json.loads(raw).items()}


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def detect_language(text: str) -> str:
    """Best ISO-639-1 code, or "und" for short or unmatchable text."""
    tokens = set(tokenize(text))
    if len(tokens) < MIN_TOKENS:
        return "und"
    best_lang = "und"
    best_fraction = 0.0
    for lang, words in sorted(_stopwords().items()):
        fraction = len(words & tokens) / len(words)
        if fraction > best_fraction:
            best_fraction = fraction
            best_lang = lang
    if best_fraction < MIN_FRACTION:
        return "und"
    return best_lang
