#!/usr/bin/env python3
"""Regenerate the bundled demo embedding file from the bundled reference sentences.

Each word gets a deterministic vector: the mean of unit base directions of the
categories whose reference sentences contain it, plus word-seeded noise, so
related questions land near each other under WRD. Purely demo data; any
word2vec-style text file can replace it at runtime.
"""
from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parent.parent / "src" / "tourdesk" / "data"
DIM = 8
EXTRA_WORDS = ["いくら", "おすすめ", "ありがとう", "こんにちは", "そこ", "京都", "奈良"]


def word_seed(word: str) -> int:
    return int.from_bytes(hashlib.sha256(word.encode("utf-8")).digest()[:4], "little")


def main() -> None:
    categories: list[str] = []
    word_categories: dict[str, set[str]] = {}
    for line in (DATA / "references.tsv").read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        category, sentence = line.split("\t")
        if category not in categories:
            categories.append(category)
        for word in sentence.split():
            word_categories.setdefault(word, set()).add(category)
    for word in EXTRA_WORDS:
        word_categories.setdefault(word, set())

    bases = {}
    for index, category in enumerate(categories):
        base = np.zeros(DIM)
        base[index % DIM] = 2.0
        bases[category] = base

    lines = [f"{len(word_categories)} {DIM}"]
    for word in sorted(word_categories):
        cats = sorted(word_categories[word])
        if cats:
            center = np.mean([bases[c] for c in cats], axis=0)
        else:
            center = np.full(DIM, 0.4)
        rng = np.random.default_rng(word_seed(word))
        vec = center + 0.25 * rng.normal(size=DIM)
        comps = " ".join(f"{x:.6f}" for x in vec)
        lines.append(f"{word} {comps}")
    out = DATA / "demo_embeddings.txt"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(word_categories)} words, dim {DIM})")


if __name__ == "__main__":
    main()
