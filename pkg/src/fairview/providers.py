"""Model-backed providers and their deterministic offline fallbacks.

Every model-dependent step (embedding, sentiment, text generation) sits
behind a small interface so the engine can run fully offline. The fallbacks
are pure functions of their inputs: byte-identical outputs across runs and
platforms, which is what the test suite and the artifact cache rely on.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from typing import Optional, Protocol, Sequence

import numpy as np


class ProviderError(RuntimeError):
    """A provider failed; carries the underlying diagnostics."""


_TOKEN_RE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)?", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; apostrophes kept inside words, digits dropped."""
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(text)]


class EmbeddingProvider(Protocol):
    dim: int

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray: ...


class HashedBowEmbedder:
    """Hashed bag-of-words embedder, the offline embedding fallback.

    Each token is hashed (blake2b) to a signed bucket; token counts
    accumulate and the vector is L2-normalized. No vocabulary, no model
    files, and fully deterministic, at the cost of purely lexical
    similarity.
    """

    def __init__(self, dim: int = 256):
        if dim < 2:
            raise ValueError("embedding dim must be >= 2")
        self.dim = dim

    def _bucket(self, token: str) -> tuple[int, float]:
        h = int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")
        return h % self.dim, -1.0 if (h >> 63) & 1 else 1.0

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for row, text in enumerate(texts):
            for token in tokenize(text):
                idx, sign = self._bucket(token)
                out[row, idx] += sign
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


class SentenceTransformerEmbedder:
    """Optional neural embedder; requires model weights to be available locally."""

    def __init__(self, model_name: str):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise ProviderError(f"sentence-transformers not installed: {exc}") from exc
        try:
            self._model = SentenceTransformer(model_name)
        except Exception as exc:
            raise ProviderError(f"could not load embedding model {model_name!r}: {exc}") from exc
        self.dim = int(self._model.get_sentence_embedding_dimension())

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        try:
            vecs = self._model.encode(list(texts), convert_to_numpy=True, show_progress_bar=False)
        except Exception as exc:
            raise ProviderError(f"embedding provider failed: {exc}") from exc
        return np.asarray(vecs, dtype=np.float64)


class SentimentProvider(Protocol):
    def classify(self, text: str) -> str: ...


# Seed polarity lexicon for the offline sentiment fallback. Deliberately
# small: enough to label clearly polarized review language, neutral on
# anything else.
POSITIVE_WORDS = frozenset(
    """excellent wonderful fantastic lovely superb amazing great good perfect
    comfortable spacious friendly helpful spotless delicious charming
    immaculate gorgeous pleasant attentive generous quick modern cozy quiet
    stunning impeccable welcoming fresh tasty convenient efficient relaxing
    bright beautiful clean warm kind polite courteous prompt outstanding
    enjoyable affordable stylish peaceful luxurious recommend loved love
    best""".split()
)

NEGATIVE_WORDS = frozenset(
    """dirty rude noisy awful terrible broken slow cramped stained smelly
    outdated overpriced cold unhelpful disappointing filthy tiny
    uncomfortable chaotic grim stale shabby dim leaky crowded careless bland
    worn sticky dreadful horrible bad poor worst unpleasant mediocre loud
    dated unfriendly damp moldy musty dark expensive disgusting hate hated
    avoid""".split()
)

_NEGATORS = frozenset({"not", "no", "never", "hardly", "barely", "neither", "nor"})


class LexiconSentiment:
    """Polarity-sum sentiment fallback.

    Counts lexicon hits (+1 positive, -1 negative), flipping a hit when the
    previous token is a negator. Sum > 0 is positive, < 0 negative, 0
    neutral. A text with zero lexicon hits is neutral by definition.
    """

    def classify(self, text: str) -> str:
        if not text:
            raise ValueError("cannot classify empty text")
        score = 0
        prev = ""
        for token in tokenize(text):
            polarity = 0
            if token in POSITIVE_WORDS:
                polarity = 1
            elif token in NEGATIVE_WORDS:
                polarity = -1
            if polarity and prev in _NEGATORS:
                polarity = -polarity
            score += polarity
            prev = token
        if score > 0:
            return "positive"
        if score < 0:
            return "negative"
        return "neutral"


class TransformerSentiment:
    """Optional neural sentiment classifier over a local transformers pipeline."""

    def __init__(self, model_name: str):
        try:
            from transformers import pipeline
        except ImportError as exc:
            raise ProviderError(f"transformers not installed: {exc}") from exc
        try:
            self._pipe = pipeline("sentiment-analysis", model=model_name)
        except Exception as exc:
            raise ProviderError(f"could not load sentiment model {model_name!r}: {exc}") from exc

    def classify(self, text: str) -> str:
        if not text:
            raise ValueError("cannot classify empty text")
        try:
            label = self._pipe(text[:2000])[0]["label"].lower()
        except Exception as exc:
            raise ProviderError(f"sentiment provider failed: {exc}") from exc
        if "pos" in label:
            return "positive"
        if "neg" in label:
            return "negative"
        return "neutral"


class TextGenerator(Protocol):
    """Chat-style text generation returning a parsed JSON object."""

    def complete_json(self, system: str, user: str) -> dict: ...


class GeneratorError(ProviderError):
    """Generation failed (transport, timeout, or non-JSON payload)."""


class ChatCompletionClient:
    """Minimal chat-completions HTTP client.

    Speaks the common ``POST {base_url}/chat/completions`` protocol. The API
    key is read from the environment variable named in the configuration,
    never from a config file body.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key_env: str = "FAIRVIEW_API_KEY",
        timeout: float = 2.0,
        transport=None,
    ):
        import httpx

        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key_env = api_key_env
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def complete_json(self, system: str, user: str) -> dict:
        import httpx

        headers = {}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
            "temperature": 0,
        }
        try:
            resp = self._client.post(
                f"{self.base_url}/chat/completions", json=body, headers=headers
            )
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
        except httpx.HTTPError as exc:
            raise GeneratorError(f"chat completion request failed: {exc}") from exc
        except (KeyError, IndexError, ValueError) as exc:
            raise GeneratorError(f"unexpected completion payload: {exc}") from exc
        return parse_json_reply(content)

    def close(self):
        self._client.close()


def parse_json_reply(content: str) -> dict:
    """Parse a JSON object out of a model reply, tolerating code fences."""
    text = content.strip()
    if text.startswith("```"):
        text = re.sub(r"^```[a-zA-Z]*\n?", "", text)
        text = re.sub(r"\n?```$", "", text.strip())
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeneratorError(f"reply is not valid JSON: {exc.msg}") from None
    if isinstance(parsed, list):
        return {"categories": parsed}
    if not isinstance(parsed, dict):
        raise GeneratorError("reply JSON is not an object or list")
    return parsed


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector is all-zero."""
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))
