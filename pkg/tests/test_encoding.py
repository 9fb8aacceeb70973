import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hifactmix.encoding import (
    EncoderConfig,
    ReferenceEncoder,
    RemoteEncoder,
    batch_encode,
    fnv1a_64,
)
from hifactmix.errors import (
    DegenerateEmbeddingError,
    EmptyTextError,
    ProtocolError,
    RemoteError,
    TransportError,
)
from hifactmix.types import EMBED_DIM


def fnv1a_64_oracle(data: bytes) -> int:
    # independent re-statement of the hash for cross-checking
    h = 14695981039346656037
    for byte in data:
        h ^= byte
        h = (h * 1099511628211) % (2 ** 64)
    return h


class TestFnv:
    def test_known_vectors(self):
        # empty input must return the offset basis
        assert fnv1a_64(b"") == 14695981039346656037

    @given(st.binary(max_size=64))
    def test_matches_oracle(self, data):
        assert fnv1a_64(data) == fnv1a_64_oracle(data)


class TestReferenceEncoder:
    def setup_method(self):
        self.enc = ReferenceEncoder()

    def test_deterministic(self):
        a = self.enc.encode("sarkar ne sadak banaya")
        b = self.enc.encode("sarkar ne sadak banaya")
        assert np.array_equal(a, b)

    def test_single_token_is_one_hot(self):
        h = fnv1a_64_oracle("vikas".encode("utf-8"))
        expected_index = h % EMBED_DIM
        expected_sign = 1.0 if (h >> 63) == 0 else -1.0
        v = self.enc.encode("vikas")
        nonzero = np.nonzero(v)[0]
        assert list(nonzero) == [expected_index]
        assert v[expected_index] == expected_sign

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.sampled_from(["sadak", "bijli", "paani", "vikas", "sarkar"]),
                    min_size=1, max_size=20))
    def test_unit_norm(self, tokens):
        v = self.enc.encode(" ".join(tokens))
        assert abs(np.linalg.norm(v) - 1.0) < 1e-9

    def test_token_permutation_invariance(self):
        a = self.enc.encode("sadak bijli paani")
        b = self.enc.encode("paani sadak bijli")
        assert np.array_equal(a, b)

    def test_truncation_at_max_sequence_tokens(self):
        enc = ReferenceEncoder(EncoderConfig(max_sequence_tokens=2))
        assert np.array_equal(enc.encode("a b"), enc.encode("a b c d e"))

    def test_empty_text(self):
        with pytest.raises(EmptyTextError):
            self.enc.encode("   ")

    def test_degenerate_embedding(self):
        # non-empty text whose tokens all strip to nothing
        with pytest.raises(DegenerateEmbeddingError):
            self.enc.encode("!!! ???")

    def test_batch_matches_single_calls(self, small_corpus):
        texts = [r.claim.text for r in small_corpus.records]
        batched = self.enc.batch_encode(texts)
        for t, v in zip(texts, batched):
            assert np.array_equal(v, self.enc.encode(t))

    def test_batch_empty(self):
        assert batch_encode([], self.enc) == []


class TestRemoteEncoder:
    def _client(self, url):
        return RemoteEncoder(EncoderConfig(remote_endpoint=url, timeout_ms=500))

    def test_pass_through(self, stub_server):
        vec = [0.5] * EMBED_DIM
        server = stub_server(lambda path, body: (200, {"embeddings": [vec] * len(body["texts"])}))
        out = self._client(server.url).encode("koi claim")
        assert out.shape == (EMBED_DIM,)
        assert np.allclose(out, 0.5)

    def test_wrong_dimension(self, stub_server):
        server = stub_server(lambda p, b: (200, {"embeddings": [[0.1] * 512]}))
        with pytest.raises(ProtocolError, match="512 != 768"):
            self._client(server.url).encode("claim")

    def test_non_finite_rejected(self, stub_server):
        bad = [0.0] * EMBED_DIM
        server = stub_server(lambda p, b: (200, {"embeddings": [bad[:-1] + [float("nan")]]}))
        with pytest.raises(ProtocolError):
            self._client(server.url).encode("claim")

    def test_timeout(self, stub_server):
        server = stub_server(lambda p, b: "hang")
        with pytest.raises(TransportError):
            self._client(server.url).encode("claim")

    def test_non_2xx(self, stub_server):
        server = stub_server(lambda p, b: (500, {"boom": True}))
        with pytest.raises(RemoteError) as exc:
            self._client(server.url).encode("claim")
        assert exc.value.status == 500

    def test_batch_single_post_preserves_order(self, stub_server):
        def responder(path, body):
            embs = []
            for i, _ in enumerate(body["texts"]):
                row = [0.0] * EMBED_DIM
                row[0] = float(i + 1)
                embs.append(row)
            return 200, {"embeddings": embs}

        server = stub_server(responder)
        out = self._client(server.url).batch_encode(["a", "b", "c"])
        assert [v[0] for v in out] == [1.0, 2.0, 3.0]
        assert len(server.requests) == 1

    def test_empty_text_rejected_client_side(self, stub_server):
        server = stub_server(lambda p, b: (200, {"embeddings": []}))
        with pytest.raises(EmptyTextError):
            self._client(server.url).encode(" ")
