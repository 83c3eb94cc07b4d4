"""Two-stage question classification: keyword rules first, WRD nearest reference second.

Seven categories, four reference sentences each (28 total). Keyword rules fire
on substring containment in rule-list order; when none fires, the utterance is
matched against all reference sentences by Word Rotator's Distance and the
closest one's category wins. An utterance whose tokens are all out of
vocabulary falls back to the no-question category so the dialogue never stalls.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Union

from .embeddings import EmbeddingTable
from .tokenizer import Gazetteer
from .wrd import (
    AllTokensOutOfVocabulary,
    SentenceDistribution,
    sentence_to_distribution,
    sentence_tokens,
    wrd_distance,
)

REFERENCES_PER_CATEGORY = 4


class IntentCategory(Enum):
    # declaration order doubles as the documented tie-break order
    PRICE = "price"
    OPENING_HOURS = "opening_hours"
    OPENING_DAYS = "opening_days"
    STATION = "station"
    HIGHWAY = "highway"
    PARKING = "parking"
    NO_QUESTION = "no_question"


CATEGORY_ORDER = list(IntentCategory)

INFO_CATEGORIES = [c for c in IntentCategory if c is not IntentCategory.NO_QUESTION]


class Stage(Enum):
    KEYWORD = "Keyword"
    WRD = "Wrd"
    FALLBACK = "Fallback"


@dataclass(frozen=True)
class KeywordRule:
    keyword: str
    category: IntentCategory

    def __post_init__(self) -> None:
        if not self.keyword:
            raise ValueError("keyword must be non-empty")


@dataclass(frozen=True, eq=False)
class ReferenceSentence:
    text: str
    category: IntentCategory
    distribution: SentenceDistribution


class ReferenceSet:
    """The 28 reference sentences in canonical order (category order, then file order)."""

    def __init__(self, sentences: list[ReferenceSentence]):
        by_category: dict[IntentCategory, list[ReferenceSentence]] = {c: [] for c in CATEGORY_ORDER}
        for sentence in sentences:
            by_category[sentence.category].append(sentence)
        for category, refs in by_category.items():
            if len(refs) != REFERENCES_PER_CATEGORY:
                raise ValueError(
                    f"category {category.value!r} has {len(refs)} reference sentences, "
                    f"expected {REFERENCES_PER_CATEGORY}"
                )
        self.sentences: list[ReferenceSentence] = [
            ref for category in CATEGORY_ORDER for ref in by_category[category]
        ]

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class ClassificationResult:
    category: IntentCategory
    stage: Stage
    distance: Optional[float] = None
    matched: Optional[str] = None


def load_rules(path: Union[str, Path]) -> list[KeywordRule]:
    """Rules file: one `keyword<TAB>category` per line; order is match order."""
    rules: list[KeywordRule] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                keyword, category = line.split("\t")
            except ValueError:
                raise ValueError(f"rules line {lineno}: expected `keyword<TAB>category`") from None
            rules.append(KeywordRule(keyword, IntentCategory(category.strip())))
    return rules


def load_references(
    path: Union[str, Path], table: EmbeddingTable, gazetteer: Gazetteer
) -> ReferenceSet:
    """References file: one `category<TAB>sentence` per line, 4 per category."""
    sentences: list[ReferenceSentence] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                category, text = line.split("\t")
            except ValueError:
                raise ValueError(f"references line {lineno}: expected `category<TAB>sentence`") from None
            tokens = sentence_tokens(text, gazetteer)
            try:
                dist = sentence_to_distribution(tokens, table)
            except AllTokensOutOfVocabulary:
                raise ValueError(
                    f"references line {lineno}: sentence {text!r} has no in-vocabulary token"
                ) from None
            sentences.append(ReferenceSentence(text, IntentCategory(category.strip()), dist))
    return ReferenceSet(sentences)


def classify_keyword(utterance: str, rules: list[KeywordRule]) -> Optional[ClassificationResult]:
    """First rule (in list order) whose keyword occurs in the utterance, else None."""
    for rule in rules:
        if rule.keyword in utterance:
            return ClassificationResult(rule.category, Stage.KEYWORD, matched=rule.keyword)
    return None


def classify_wrd(
    utterance: str,
    refs: ReferenceSet,
    table: EmbeddingTable,
    gazetteer: Gazetteer,
) -> ClassificationResult:
    """Category of the WRD-closest reference sentence.

    Ties break by category declaration order then reference order, which the
    canonical reference ordering plus a strict-less scan gives for free.
    """
    tokens = sentence_tokens(utterance, gazetteer)
    try:
        dist = sentence_to_distribution(tokens, table)
    except AllTokensOutOfVocabulary:
        return ClassificationResult(IntentCategory.NO_QUESTION, Stage.FALLBACK)
    best: Optional[ReferenceSentence] = None
    best_distance = float("inf")
    for ref in refs.sentences:
        d = wrd_distance(dist, ref.distribution)
        if d < best_distance:
            best = ref
            best_distance = d
    assert best is not None
    return ClassificationResult(best.category, Stage.WRD, distance=best_distance, matched=best.text)


def classify(
    utterance: str,
    rules: list[KeywordRule],
    refs: ReferenceSet,
    table: EmbeddingTable,
    gazetteer: Gazetteer,
) -> ClassificationResult:
    """Keyword stage takes precedence; the WRD stage handles the rest."""
    hit = classify_keyword(utterance, rules)
    if hit is not None:
        return hit
    return classify_wrd(utterance, refs, table, gazetteer)
