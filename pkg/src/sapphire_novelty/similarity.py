"""Semantic similarity between construct texts, via four pluggable backends.

Every backend maps a pair of texts to a similarity in [0, 1]:

* ``LexicalBackend`` — term-frequency count vectors over the shared vocabulary
  of the two texts; deterministic, dependency-free.
* ``WordVectorBackend`` — mean-pooled pre-trained word vectors loaded from the
  standard text format; out-of-vocabulary tokens are skipped.
* ``RemoteBackend`` — a sentence-embedding HTTP service (POST ``{"texts": [...]}``,
  response ``{"vectors": [[...], ...]}``) with batching and retries.
* ``FixtureBackend`` — a pinned table of pair similarities, for bit-exact
  replay of scores produced elsewhere.

All similarity calls are pure given a backend; backends are immutable after
construction and safe for concurrent use.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import requests

__all__ = [
    "OovWarning",
    "WordVectorFormatError",
    "FixtureFormatError",
    "MissingFixtureError",
    "BackendUnavailableError",
    "tokenize",
    "cosine_similarity",
    "embed_lexical",
    "embed_wordvector",
    "load_word_vectors",
    "load_fixture_similarities",
    "SimilarityBackend",
    "LexicalBackend",
    "WordVectorBackend",
    "RemoteBackend",
    "FixtureBackend",
    "text_similarity",
]


class OovWarning(UserWarning):
    """Raised when pooling finds no in-vocabulary token, or both vectors are zero."""


class WordVectorFormatError(ValueError):
    """A word-vector file line that does not follow the format; names the line."""


class FixtureFormatError(ValueError):
    """A fixture-similarity file line that does not follow the format; names the line."""


class MissingFixtureError(LookupError):
    """A fixture lookup for a pair the table does not contain; never silently defaulted."""


class BackendUnavailableError(RuntimeError):
    """The remote embedding service failed (transport, status, or shape) after retries."""


# Maximal runs of Unicode alphanumerics; underscore is a separator, not a word char.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str, stopwords: Iterable[str] = ()) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters.

    Empty tokens are dropped by construction; the stopword filter is applied
    last. Deterministic; empty text gives an empty list.
    """
    tokens = _TOKEN_RE.findall(text.lower())
    if stopwords:
        stopset = set(stopwords)
        tokens = [token for token in tokens if token not in stopset]
    return tokens


def cosine_similarity(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """Cosine of the angle between two equal-dimension vectors, clamped to [-1, 1].

    A zero vector is the out-of-vocabulary sentinel and matches nothing, so the
    similarity is 0.0 whenever either norm vanishes; the zero-vs-zero case also
    emits an :class:`OovWarning`.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 and norm_v == 0.0:
        warnings.warn("cosine of two all-zero vectors (OOV vs OOV); defined as 0.0", OovWarning)
        return 0.0
    if norm_u == 0.0 or norm_v == 0.0:
        return 0.0
    value = float(np.dot(u, v)) / (norm_u * norm_v)
    return min(1.0, max(-1.0, value))


def embed_lexical(tokens: Sequence[str], vocabulary: Mapping[str, int]) -> np.ndarray:
    """Term-frequency count vector over ``vocabulary`` (token -> index)."""
    vector = np.zeros(len(vocabulary), dtype=float)
    for token in tokens:
        index = vocabulary.get(token)
        if index is not None:
            vector[index] += 1.0
    return vector


def embed_wordvector(tokens: Sequence[str], table: Mapping[str, np.ndarray]) -> np.ndarray:
    """Mean of the vectors of in-vocabulary tokens.

    Out-of-vocabulary tokens are skipped; if no token is in vocabulary the
    all-zero sentinel is returned and an :class:`OovWarning` is emitted.
    """
    if not table:
        raise ValueError("word-vector table must be non-empty")
    dimension = len(next(iter(table.values())))
    hits = [table[token] for token in tokens if token in table]
    if not hits:
        warnings.warn(
            f"no in-vocabulary token among {list(tokens)!r}; returning the zero sentinel",
            OovWarning,
        )
        return np.zeros(dimension, dtype=float)
    return np.mean(np.stack(hits), axis=0)


def load_word_vectors(path: str | Path) -> dict[str, np.ndarray]:
    """Parse the standard text word-vector format into a word -> vector table.

    An optional first line ``<count> <dim>`` is treated as a header; every
    other line is ``word v1 v2 ... vd``. All vectors must share one dimension.
    Duplicate words keep the first occurrence, with a warning.
    """
    table: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split()
            if line_no == 1 and len(parts) == 2 and _is_int(parts[0]) and _is_int(parts[1]):
                continue  # header line
            if len(parts) < 2:
                raise WordVectorFormatError(
                    f"line {line_no}: expected a word followed by floats, got {line!r}"
                )
            word, values = parts[0], parts[1:]
            try:
                vector = np.array([float(x) for x in values], dtype=float)
            except ValueError:
                raise WordVectorFormatError(
                    f"line {line_no}: non-numeric vector component in {line!r}"
                ) from None
            if dimension is None:
                dimension = len(vector)
            elif len(vector) != dimension:
                raise WordVectorFormatError(
                    f"line {line_no}: expected {dimension} floats, found {len(vector)}"
                )
            if word in table:
                warnings.warn(
                    f"line {line_no}: duplicate word {word!r}; keeping the first occurrence",
                    UserWarning,
                )
                continue
            table[word] = vector
    return table


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def _fixture_key(a: str, b: str) -> tuple[str, str]:
    # Matching is symmetric and insensitive to surrounding space and case.
    left, right = a.strip().casefold(), b.strip().casefold()
    return (left, right) if left <= right else (right, left)


def load_fixture_similarities(path: str | Path) -> dict[tuple[str, str], float]:
    """Parse a pinned-similarity file: one ``textA<TAB>textB<TAB>similarity`` per line.

    The resulting table answers (a, b) and (b, a) identically; texts are
    matched after trimming and case-folding. Similarities must lie in [0, 1];
    a duplicate pair with a conflicting value is a parse error.
    """
    table: dict[tuple[str, str], float] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise FixtureFormatError(
                    f"line {line_no}: expected textA<TAB>textB<TAB>similarity, got {line!r}"
                )
            text_a, text_b, raw_value = parts
            try:
                value = float(raw_value)
            except ValueError:
                raise FixtureFormatError(
                    f"line {line_no}: similarity {raw_value!r} is not a decimal"
                ) from None
            if not 0.0 <= value <= 1.0:
                raise FixtureFormatError(
                    f"line {line_no}: similarity {value} outside [0, 1]"
                )
            key = _fixture_key(text_a, text_b)
            if key in table and table[key] != value:
                raise FixtureFormatError(
                    f"line {line_no}: pair {key!r} already pinned to {table[key]}, "
                    f"conflicting value {value}"
                )
            table[key] = value
    return table


class SimilarityBackend:
    """Contract shared by every backend: (text, text) -> similarity in [0, 1]."""

    kind: str = ""

    def similarity(self, a: str, b: str) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class LexicalBackend(SimilarityBackend):
    """Count-vector cosine over the shared vocabulary of the two texts.

    Deterministic stand-in for a learned embedder; the default stopword list
    is empty because construct phrases are short and words like "of" or "to"
    carry structure ("static to movable liquid").
    """

    stopwords: frozenset[str] = frozenset()
    kind: str = field(default="lexical", init=False, repr=False)

    def similarity(self, a: str, b: str) -> float:
        tokens_a = tokenize(a, self.stopwords)
        tokens_b = tokenize(b, self.stopwords)
        if tokens_a == tokens_b:
            if not tokens_a:
                warnings.warn(f"no tokens survive in {a!r} vs {b!r}", OovWarning)
                return 0.0
            return 1.0
        vocabulary = {token: i for i, token in enumerate(sorted(set(tokens_a) | set(tokens_b)))}
        u = embed_lexical(tokens_a, vocabulary)
        v = embed_lexical(tokens_b, vocabulary)
        return max(0.0, cosine_similarity(u, v))


@dataclass(frozen=True)
class WordVectorBackend(SimilarityBackend):
    """Cosine over mean-pooled pre-trained word vectors."""

    table: Mapping[str, np.ndarray]
    kind: str = field(default="wordvec", init=False, repr=False)

    @classmethod
    def from_file(cls, path: str | Path) -> "WordVectorBackend":
        return cls(table=load_word_vectors(path))

    def similarity(self, a: str, b: str) -> float:
        tokens_a = tokenize(a)
        tokens_b = tokenize(b)
        if tokens_a == tokens_b:
            pooled = embed_wordvector(tokens_a, self.table) if tokens_a else None
            if pooled is None or not pooled.any():
                return 0.0
            return 1.0
        u = embed_wordvector(tokens_a, self.table)
        v = embed_wordvector(tokens_b, self.table)
        return max(0.0, cosine_similarity(u, v))


@dataclass(frozen=True)
class RemoteBackend(SimilarityBackend):
    """Cosine over sentence vectors fetched from an embedding HTTP service.

    Wire protocol: POST to ``endpoint`` with JSON body ``{"texts": [...]}``;
    the response must be ``{"vectors": [[...], ...]}`` with one equal-length
    numeric array per input text, in the same order. Any transport failure,
    non-2xx status, or shape mismatch is retried; after ``retries`` attempts
    the call raises :class:`BackendUnavailableError`.
    """

    endpoint: str
    batch_size: int = 32
    timeout: float = 30.0
    retries: int = 3
    kind: str = field(default="remote", init=False, repr=False)

    def similarity(self, a: str, b: str) -> float:
        u, v = self.embed_texts([a, b])
        return max(0.0, cosine_similarity(u, v))

    def embed_texts(self, texts: Sequence[str]) -> list[np.ndarray]:
        """Embed ``texts`` in order, batching requests at ``batch_size``."""
        vectors: list[np.ndarray] = []
        for start in range(0, len(texts), self.batch_size):
            vectors.extend(self._post_batch(list(texts[start : start + self.batch_size])))
        return vectors

    def _post_batch(self, batch: list[str]) -> list[np.ndarray]:
        attempts = max(1, self.retries)
        last_error: Exception | None = None
        for _ in range(attempts):
            try:
                response = requests.post(
                    self.endpoint, json={"texts": batch}, timeout=self.timeout
                )
                if not 200 <= response.status_code < 300:
                    raise ValueError(f"status {response.status_code}")
                payload = response.json()
                return _parse_vectors(payload, expected=len(batch))
            except (requests.RequestException, ValueError, KeyError, TypeError) as error:
                last_error = error
        raise BackendUnavailableError(
            f"embedding service at {self.endpoint} failed after {attempts} attempt(s): {last_error}"
        )


def _parse_vectors(payload: object, expected: int) -> list[np.ndarray]:
    if not isinstance(payload, dict) or "vectors" not in payload:
        raise ValueError("response body must be an object with a 'vectors' field")
    raw = payload["vectors"]
    if not isinstance(raw, list) or len(raw) != expected:
        raise ValueError(f"expected {expected} vectors, got {len(raw) if isinstance(raw, list) else type(raw)}")
    vectors = [np.asarray(item, dtype=float) for item in raw]
    if any(vector.ndim != 1 for vector in vectors):
        raise ValueError("each vector must be a flat array of numbers")
    dimensions = {len(vector) for vector in vectors}
    if len(dimensions) > 1:
        raise ValueError(f"vectors have mixed dimensions: {sorted(dimensions)}")
    return vectors


@dataclass(frozen=True)
class FixtureBackend(SimilarityBackend):
    """Replay of pinned pair similarities; a missing pair is an explicit error."""

    table: Mapping[tuple[str, str], float]
    kind: str = field(default="fixture", init=False, repr=False)

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureBackend":
        return cls(table=load_fixture_similarities(path))

    def similarity(self, a: str, b: str) -> float:
        key = _fixture_key(a, b)
        try:
            return self.table[key]
        except KeyError:
            raise MissingFixtureError(
                f"no pinned similarity for pair ({a!r}, {b!r})"
            ) from None


def text_similarity(a: str, b: str, backend: SimilarityBackend) -> float:
    """Similarity of two texts under ``backend``, always in [0, 1].

    Symmetric in (a, b); negative cosines are clamped to 0 so downstream
    novelty stays in [0, 1]. Under the lexical and word-vector backends two
    texts identical after tokenization score exactly 1.0 (given at least one
    in-vocabulary token).
    """
    if not a.strip() or not b.strip():
        raise ValueError("text_similarity requires two non-empty texts")
    value = backend.similarity(a, b)
    return min(1.0, max(0.0, value))
