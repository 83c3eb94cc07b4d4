from __future__ import annotations

import io
import math

import numpy as np
import pytest

from tourdesk.embeddings import (
    EmbeddingFormatError,
    WordVector,
    cosine,
    dump_embeddings,
    load_embeddings,
)


def load_text(text: str):
    return load_embeddings(io.StringIO(text))


def test_minimal_well_formed_file():
    table = load_text("2 3\na 1 0 0\nb 0 1 0\n")
    assert table.dimension == 3
    assert len(table) == 2
    assert table.get("a").components == pytest.approx([1.0, 0.0, 0.0])


def test_dimension_mismatch_is_an_error():
    with pytest.raises(EmbeddingFormatError):
        load_text("1 3\na 1 0\n")


def test_duplicate_token_is_an_error():
    with pytest.raises(EmbeddingFormatError):
        load_text("2 2\na 1 0\na 0 1\n")


def test_header_count_mismatch_is_an_error():
    with pytest.raises(EmbeddingFormatError):
        load_text("3 2\na 1 0\nb 0 1\n")


def test_malformed_header_is_an_error():
    with pytest.raises(EmbeddingFormatError):
        load_text("banana\na 1 0\n")


def test_non_numeric_component_is_an_error():
    with pytest.raises(EmbeddingFormatError):
        load_text("1 2\na 1 x\n")


def test_zero_norm_vector_rejected_at_load():
    with pytest.raises(EmbeddingFormatError):
        load_text("1 2\na 0 0\n")


def test_lookup_absent_token_returns_none():
    table = load_text("1 2\na 1 0\n")
    assert table.get("zzz") is None


def test_lookup_on_empty_table_returns_none():
    table = load_text("0 2\n")
    assert table.get("a") is None


def test_norm_matches_components():
    table = load_text("1 3\na 1 2 2\n")
    vec = table.get("a")
    assert abs(vec.norm**2 - float(np.sum(vec.components**2))) <= 1e-9 * vec.norm**2
    assert vec.norm == pytest.approx(3.0)


def test_cosine_identity_and_orthogonality():
    v = WordVector("v", np.array([0.3, -0.4]))
    assert cosine(v, v) == 1.0
    e1 = WordVector("x", np.array([1.0, 0.0]))
    e2 = WordVector("y", np.array([0.0, 1.0]))
    assert cosine(e1, e2) == 0.0


def test_cosine_hand_value():
    u = WordVector("u", np.array([1.0, 1.0]))
    v = WordVector("v", np.array([1.0, 0.0]))
    assert cosine(u, v) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)


def test_cosine_is_symmetric_after_clamping():
    rng = np.random.default_rng(3)
    for _ in range(50):
        u = WordVector("u", rng.normal(size=8))
        v = WordVector("v", rng.normal(size=8))
        assert cosine(u, v) == cosine(v, u)
        assert -1.0 <= cosine(u, v) <= 1.0


def test_cosine_zero_norm_rejected():
    z = WordVector("z", np.array([0.0, 0.0]))
    v = WordVector("v", np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        cosine(z, v)


def test_load_dump_load_round_trip():
    rng = np.random.default_rng(5)
    lines = ["5 4"]
    for i in range(5):
        comps = " ".join(repr(float(x)) for x in rng.normal(size=4))
        lines.append(f"w{i} {comps}")
    original = load_text("\n".join(lines) + "\n")
    buf = io.StringIO()
    dump_embeddings(original, buf)
    reloaded = load_embeddings(io.StringIO(buf.getvalue()))
    assert reloaded.dimension == original.dimension
    assert reloaded.tokens() == original.tokens()
    for token in original.tokens():
        assert np.array_equal(reloaded.get(token).components, original.get(token).components)
