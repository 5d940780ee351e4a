"""Wire-protocol checks for the remote embedding backend, against a stub server."""

import numpy as np
import pytest

from sapphire_novelty import (
    BackendUnavailableError,
    RemoteBackend,
    cosine_similarity,
    text_similarity,
)

from conftest import canned_vector


class TestEmbedTexts:
    def test_vectors_come_back_in_request_order(self, embed_stub):
        backend = RemoteBackend(endpoint=embed_stub.url)
        texts = ["spilling of liquid", "hot steam", "kettle base", "loose lid"]
        vectors = backend.embed_texts(texts)
        assert len(vectors) == len(texts)
        for text, vector in zip(texts, vectors):
            assert list(vector) == canned_vector(text)

    def test_batching_respects_configured_size(self, embed_stub):
        backend = RemoteBackend(endpoint=embed_stub.url, batch_size=3)
        texts = [f"text number {i}" for i in range(7)]
        vectors = backend.embed_texts(texts)
        assert [len(batch) for batch in embed_stub.batches] == [3, 3, 1]
        assert [list(v) for v in vectors] == [canned_vector(t) for t in texts]

    def test_single_request_for_small_input(self, embed_stub):
        backend = RemoteBackend(endpoint=embed_stub.url, batch_size=32)
        backend.embed_texts(["a b", "c d"])
        assert [len(batch) for batch in embed_stub.batches] == [2]


class TestSimilarity:
    def test_similarity_matches_local_cosine_of_canned_vectors(self, embed_stub):
        backend = RemoteBackend(endpoint=embed_stub.url)
        a, b = "spilling of liquid", "water escaping the kettle"
        expected = max(
            0.0, cosine_similarity(np.array(canned_vector(a)), np.array(canned_vector(b)))
        )
        assert text_similarity(a, b, backend) == expected

    def test_similarity_symmetric(self, embed_stub):
        backend = RemoteBackend(endpoint=embed_stub.url)
        assert text_similarity("a b c", "d e", backend) == text_similarity(
            "d e", "a b c", backend
        )


class TestRetries:
    def test_transient_failures_are_retried(self, embed_stub):
        embed_stub.fail_remaining = 2
        backend = RemoteBackend(endpoint=embed_stub.url, retries=3)
        vectors = backend.embed_texts(["a b"])
        assert list(vectors[0]) == canned_vector("a b")
        assert len(embed_stub.batches) == 3  # two failures plus the success

    def test_exhausted_retries_raise_backend_unavailable(self, embed_stub):
        embed_stub.fail_remaining = 5
        backend = RemoteBackend(endpoint=embed_stub.url, retries=2)
        with pytest.raises(BackendUnavailableError, match="after 2 attempt"):
            backend.embed_texts(["a b"])
        assert len(embed_stub.batches) == 2


class TestErrorPaths:
    def test_wrong_vector_count_is_a_shape_error(self, embed_stub):
        embed_stub.mode = "bad_count"
        backend = RemoteBackend(endpoint=embed_stub.url, retries=2)
        with pytest.raises(BackendUnavailableError, match="expected 2 vectors"):
            backend.embed_texts(["a", "b"])

    def test_missing_vectors_field_is_a_shape_error(self, embed_stub):
        embed_stub.mode = "missing_field"
        backend = RemoteBackend(endpoint=embed_stub.url, retries=1)
        with pytest.raises(BackendUnavailableError, match="vectors"):
            backend.embed_texts(["a", "b"])

    def test_mixed_dimensions_rejected(self, embed_stub):
        embed_stub.mode = "mixed_dims"
        backend = RemoteBackend(endpoint=embed_stub.url, retries=1)
        with pytest.raises(BackendUnavailableError, match="mixed dimensions"):
            backend.embed_texts(["a", "b"])

    def test_unreachable_endpoint(self):
        backend = RemoteBackend(endpoint="http://127.0.0.1:9/embed", retries=2, timeout=1)
        with pytest.raises(BackendUnavailableError):
            backend.embed_texts(["a"])
