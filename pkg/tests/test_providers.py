import httpx
import numpy as np
import pytest

from fairview.providers import (
    ChatCompletionClient,
    GeneratorError,
    HashedBowEmbedder,
    LexiconSentiment,
    cosine,
    parse_json_reply,
    tokenize,
)


class TestHashedEmbedder:
    def test_identical_texts_identical_vectors(self):
        emb = HashedBowEmbedder(64)
        vecs = emb.embed_texts(["the staff was kind", "the staff was kind"])
        assert np.array_equal(vecs[0], vecs[1])
        assert cosine(vecs[0], vecs[1]) == pytest.approx(1.0)

    def test_different_texts_distinct(self):
        emb = HashedBowEmbedder(256)
        vecs = emb.embed_texts(["clean room", "dirty room"])
        assert not np.array_equal(vecs[0], vecs[1])
        assert cosine(vecs[0], vecs[1]) < 1.0
        # shared token keeps them correlated
        assert cosine(vecs[0], vecs[1]) > 0.0

    def test_deterministic_across_instances(self):
        a = HashedBowEmbedder(128).embed_texts(["lovely pool area"])
        b = HashedBowEmbedder(128).embed_texts(["lovely pool area"])
        assert a.tobytes() == b.tobytes()

    def test_unit_norm(self):
        vecs = HashedBowEmbedder(64).embed_texts(["some words here"])
        assert np.linalg.norm(vecs[0]) == pytest.approx(1.0)

    def test_case_insensitive(self):
        emb = HashedBowEmbedder(64)
        vecs = emb.embed_texts(["Great View", "great view"])
        assert np.array_equal(vecs[0], vecs[1])

    def test_rejects_tiny_dim(self):
        with pytest.raises(ValueError):
            HashedBowEmbedder(1)


class TestTokenize:
    def test_basic(self):
        assert tokenize("The staff, was kind!") == ["the", "staff", "was", "kind"]

    def test_keeps_apostrophes(self):
        assert tokenize("wasn't bad") == ["wasn't", "bad"]

    def test_drops_digits(self):
        assert tokenize("room 404 was fine") == ["room", "was", "fine"]


class TestLexiconSentiment:
    def test_positive(self):
        assert LexiconSentiment().classify("excellent, wonderful stay") == "positive"

    def test_negative(self):
        assert LexiconSentiment().classify("the room was dirty and noisy") == "negative"

    def test_zero_hits_neutral(self):
        assert LexiconSentiment().classify("we arrived on a tuesday") == "neutral"

    def test_negation_flips(self):
        assert LexiconSentiment().classify("not dirty at all") == "positive"

    def test_balanced_is_neutral(self):
        assert LexiconSentiment().classify("lovely view but dirty floor") == "neutral"

    def test_empty_text_errors(self):
        with pytest.raises(ValueError):
            LexiconSentiment().classify("")


class TestParseJsonReply:
    def test_plain_object(self):
        assert parse_json_reply('{"a": 1}') == {"a": 1}

    def test_code_fence(self):
        assert parse_json_reply('```json\n{"a": 1}\n```') == {"a": 1}

    def test_bare_list_wrapped(self):
        assert parse_json_reply('[{"category": "x"}]') == {"categories": [{"category": "x"}]}

    def test_garbage_raises(self):
        with pytest.raises(GeneratorError):
            parse_json_reply("I could not find categories, sorry!")


def mock_chat_client(handler) -> ChatCompletionClient:
    return ChatCompletionClient(
        base_url="http://generator.test/v1",
        model="test-model",
        transport=httpx.MockTransport(handler),
    )


class TestChatCompletionClient:
    def test_roundtrip(self):
        def handler(request):
            body = {
                "choices": [{"message": {"content": '{"summary": "s", "suggestion": "g"}'}}]
            }
            assert request.url.path.endswith("/chat/completions")
            return httpx.Response(200, json=body)

        client = mock_chat_client(handler)
        assert client.complete_json("sys", "user") == {"summary": "s", "suggestion": "g"}

    def test_sends_prompts_and_model(self):
        captured = {}

        def handler(request):
            import json as _json

            captured.update(_json.loads(request.content))
            return httpx.Response(200, json={"choices": [{"message": {"content": "{}"}}]})

        mock_chat_client(handler).complete_json("the system prompt", "the user prompt")
        assert captured["model"] == "test-model"
        assert captured["messages"][0] == {"role": "system", "content": "the system prompt"}
        assert captured["messages"][1] == {"role": "user", "content": "the user prompt"}

    def test_http_error_wrapped(self):
        def handler(request):
            return httpx.Response(500, text="boom")

        with pytest.raises(GeneratorError):
            mock_chat_client(handler).complete_json("s", "u")

    def test_api_key_header(self, monkeypatch):
        monkeypatch.setenv("FAIRVIEW_API_KEY", "sk-secret")
        seen = {}

        def handler(request):
            seen["auth"] = request.headers.get("authorization")
            return httpx.Response(200, json={"choices": [{"message": {"content": "{}"}}]})

        mock_chat_client(handler).complete_json("s", "u")
        assert seen["auth"] == "Bearer sk-secret"
