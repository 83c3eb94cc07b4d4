"""Utterance segmentation and memorable-spot extraction.

There is no morphological analyzer here: proper nouns are tagged by greedy
longest-match against a gazetteer of known place names, which is enough to
reproduce the spot-extraction behaviour deterministically. Whitespace splits
tokens where present; punctuation always splits.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

DEFAULT_SPOT = "そこ"


class TokenTag(Enum):
    PROPER_NOUN = "ProperNoun"
    WORD = "Word"
    PUNCTUATION = "Punctuation"


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    tag: TokenTag


class Gazetteer:
    """Lexicon of known proper nouns (place names)."""

    def __init__(self, entries: Iterable[str]):
        self.entries: set[str] = set()
        for entry in entries:
            if not entry:
                raise ValueError("gazetteer entries must be non-empty")
            self.entries.add(entry)
        self.max_len = max((len(e) for e in self.entries), default=0)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Gazetteer":
        """Load one entry per line, UTF-8; blank lines are skipped."""
        with open(path, encoding="utf-8") as f:
            return cls(line.strip() for line in f if line.strip())

    def __contains__(self, entry: str) -> bool:
        return entry in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str, gazetteer: Gazetteer) -> list[Token]:
    """Segment text into ProperNoun / Word / Punctuation tokens.

    At each position the longest gazetteer entry wins (left-to-right, then
    longest). Unmatched maximal runs between whitespace, punctuation and
    gazetteer hits become single Word tokens, so unsegmented Japanese text
    yields long Word runs while spaced text splits into words.
    """
    tokens: list[Token] = []
    word_start: Optional[int] = None

    def flush(upto: int) -> None:
        nonlocal word_start
        if word_start is not None:
            tokens.append(Token(text[word_start:upto], word_start, upto, TokenTag.WORD))
            word_start = None

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            flush(i)
            i += 1
            continue
        matched = None
        limit = min(gazetteer.max_len, n - i)
        for length in range(limit, 0, -1):
            candidate = text[i : i + length]
            if candidate in gazetteer:
                matched = candidate
                break
        if matched is not None:
            flush(i)
            tokens.append(Token(matched, i, i + len(matched), TokenTag.PROPER_NOUN))
            i += len(matched)
            continue
        if _is_punctuation(ch):
            flush(i)
            tokens.append(Token(ch, i, i + 1, TokenTag.PUNCTUATION))
            i += 1
            continue
        if word_start is None:
            word_start = i
        i += 1
    flush(n)
    return tokens


def extract_proper_nouns(tokens: list[Token]) -> list[str]:
    """Surfaces of ProperNoun tokens in utterance order, duplicates preserved."""
    return [t.surface for t in tokens if t.tag is TokenTag.PROPER_NOUN]


def memorable_spot(
    utterance: Optional[str],
    gazetteer: Gazetteer,
    default: str = DEFAULT_SPOT,
) -> str:
    """First proper noun in the utterance, or the default slot value.

    A silent customer (utterance None) and an utterance with no gazetteer hit
    both yield the default.
    """
    if not default:
        raise ValueError("default spot value must be non-empty")
    if utterance is None:
        return default
    nouns = extract_proper_nouns(tokenize(utterance, gazetteer))
    return nouns[0] if nouns else default
