"""Word-vector store: load a word2vec-style text file and serve norm/cosine primitives.

The file format is a header line ``<count> <dim>`` followed by one line per
word: the token, then ``dim`` whitespace-separated decimal components.
Tokens are compared byte-exact; no case folding is applied.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Optional, Union

import numpy as np


class EmbeddingFormatError(ValueError):
    """Raised when an embedding file violates the expected text format."""


@dataclass(frozen=True, eq=False)
class WordVector:
    token: str
    components: np.ndarray
    norm: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "norm", float(np.linalg.norm(self.components)))


class EmbeddingTable:
    """Immutable token -> vector map; every vector has the same dimension."""

    def __init__(self, dimension: int, vectors: Iterable[WordVector]):
        if dimension <= 0:
            raise ValueError(f"dimension must be positive, got {dimension}")
        self.dimension = int(dimension)
        self._entries: dict[str, WordVector] = {}
        for vec in vectors:
            if vec.components.shape != (self.dimension,):
                raise ValueError(
                    f"vector for {vec.token!r} has {vec.components.shape[0]} components, "
                    f"expected {self.dimension}"
                )
            if vec.token in self._entries:
                raise ValueError(f"duplicate token {vec.token!r}")
            self._entries[vec.token] = vec

    def get(self, token: str) -> Optional[WordVector]:
        """Return the stored vector, or None when the token is out of vocabulary."""
        return self._entries.get(token)

    def __contains__(self, token: str) -> bool:
        return token in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def tokens(self) -> list[str]:
        return list(self._entries)


def _as_text_stream(source: Union[str, Path, IO[str], IO[bytes]]) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8")
    if isinstance(source, io.TextIOBase):
        return source
    # binary stream
    return io.TextIOWrapper(source, encoding="utf-8")


def load_embeddings(source: Union[str, Path, IO[str], IO[bytes]]) -> EmbeddingTable:
    """Parse a word2vec-style text file into an EmbeddingTable.

    Rejects malformed headers, per-line dimension mismatches, non-numeric
    components, duplicate tokens, zero-norm vectors, and header counts that
    do not match the number of data lines.
    """
    stream = _as_text_stream(source)
    header = stream.readline()
    parts = header.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"malformed header line: {header!r}")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"malformed header line: {header!r}") from None
    if count < 0 or dim <= 0:
        raise EmbeddingFormatError(f"invalid header values: count={count} dim={dim}")

    vectors: list[WordVector] = []
    seen: set[str] = set()
    n_lines = 0
    for lineno, line in enumerate(stream, start=2):
        if not line.strip():
            continue
        n_lines += 1
        fields = line.split()
        token = fields[0]
        if len(fields) - 1 != dim:
            raise EmbeddingFormatError(
                f"line {lineno}: expected {dim} components for {token!r}, got {len(fields) - 1}"
            )
        try:
            comps = np.array([float(x) for x in fields[1:]], dtype=np.float64)
        except ValueError:
            raise EmbeddingFormatError(f"line {lineno}: non-numeric component for {token!r}") from None
        if token in seen:
            raise EmbeddingFormatError(f"line {lineno}: duplicate token {token!r}")
        seen.add(token)
        vec = WordVector(token, comps)
        if vec.norm == 0.0:
            raise EmbeddingFormatError(f"line {lineno}: zero-norm vector for {token!r}")
        vectors.append(vec)
    if n_lines != count:
        raise EmbeddingFormatError(f"header declares {count} entries but file has {n_lines}")
    return EmbeddingTable(dim, vectors)


def dump_embeddings(table: EmbeddingTable, stream: IO[str]) -> None:
    """Write the table back out in the same text format (round-trips exactly)."""
    stream.write(f"{len(table)} {table.dimension}\n")
    for token in table.tokens():
        vec = table.get(token)
        assert vec is not None
        comps = " ".join(repr(float(c)) for c in vec.components)
        stream.write(f"{token} {comps}\n")


def cosine(u: WordVector, v: WordVector) -> float:
    """Cosine similarity of two vectors, clamped to [-1, 1] against rounding."""
    if u.norm == 0.0 or v.norm == 0.0:
        raise ValueError("cosine undefined for zero-norm vectors")
    value = float(np.dot(u.components, v.components)) / (u.norm * v.norm)
    return max(-1.0, min(1.0, value))
