"""Word Rotator's Distance between two sentences.

Each in-vocabulary token contributes mass proportional to its embedding norm;
the transport cost between tokens is the cosine distance of their normalized
vectors. The sentence distance is the exact minimum-cost transport value,
which lands in [0, 2].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingTable
from .tokenizer import Gazetteer, TokenTag, tokenize
from .transport import Histogram, solve_emd


class AllTokensOutOfVocabulary(ValueError):
    """Every token of a sentence is missing from the embedding table."""


@dataclass(frozen=True, eq=False)
class SentenceDistribution:
    tokens: list[str]
    mass: Histogram
    directions: np.ndarray  # one unit row vector per token


def sentence_to_distribution(tokens: list[str], table: EmbeddingTable) -> SentenceDistribution:
    """Build the mass/direction decomposition of a sentence.

    Out-of-vocabulary tokens are dropped; duplicates stay separate mass
    points. Raises AllTokensOutOfVocabulary when nothing survives, so the
    caller decides the fallback.
    """
    kept: list[str] = []
    norms: list[float] = []
    rows: list[np.ndarray] = []
    # canonical (sorted) token order makes the metric exactly order-invariant:
    # a permuted sentence yields bit-identical arrays and hence the same solve
    for token in sorted(tokens):
        vec = table.get(token)
        if vec is None:
            continue
        kept.append(token)
        norms.append(vec.norm)
        rows.append(vec.components / vec.norm)
    if not kept:
        raise AllTokensOutOfVocabulary(f"no token of {tokens!r} is in the embedding table")
    weights = np.array(norms, dtype=np.float64)
    return SentenceDistribution(
        tokens=kept,
        mass=Histogram(weights / weights.sum()),
        directions=np.vstack(rows),
    )


def sentence_tokens(text: str, gazetteer: Gazetteer) -> list[str]:
    """Tokenize a raw sentence for WRD: all surfaces except punctuation."""
    return [t.surface for t in tokenize(text, gazetteer) if t.tag is not TokenTag.PUNCTUATION]


def wrd_distance(s1: SentenceDistribution, s2: SentenceDistribution) -> float:
    """Exact WRD between two sentence distributions; always in [0, 2]."""
    # unit directions: cosine is a plain dot product
    dots = np.clip(s1.directions @ s2.directions.T, -1.0, 1.0)
    cost = np.maximum(1.0 - dots, 0.0)
    plan = solve_emd(s1.mass, s2.mass, cost)
    return max(0.0, plan.cost)
