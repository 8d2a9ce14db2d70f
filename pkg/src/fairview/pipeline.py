"""Corpus processing: embeddings, sentiment, keywords, topics, spans.

Stages run once at startup and produce immutable artifacts. Each stage is a
pure function of (corpus, provider); with the offline providers the whole
pipeline is deterministic, so artifacts can be cached and compared
byte-for-byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .corpus import Corpus, SentimentLabel
from .providers import (
    EmbeddingProvider,
    GeneratorError,
    ProviderError,
    SentimentProvider,
    TextGenerator,
    cosine,
    tokenize,
)
from .prompts import topic_prompt

# Classic English stopword list (the Glasgow IR list, as shipped by several
# NLP toolkits). Used for keyword candidate filtering only.
STOPWORDS = frozenset("""
a about above across after afterwards again against all almost alone along
already also although always am among amongst amoungst amount an and another
any anyhow anyone anything anyway anywhere are around as at back be became
because become becomes becoming been before beforehand behind being below
beside besides between beyond bill both bottom but by call can cannot cant co
con could couldnt cry de describe detail do done down due during each eg
eight either eleven else elsewhere empty enough etc even ever every everyone
everything everywhere except few fifteen fifty fill find fire first five for
former formerly forty found four from front full further get give go had has
hasnt have he hence her here hereafter hereby herein hereupon hers herself
him himself his how however hundred i ie if in inc indeed interest into is it
its itself keep last latter latterly least less ltd made many may me
meanwhile might mill mine more moreover most mostly move much must my myself
name namely neither never nevertheless next nine no nobody none noone nor not
nothing now nowhere of off often on once one only onto or other others
otherwise our ours ourselves out over own part per perhaps please put rather
re same see seem seemed seeming seems serious several she should show side
since sincere six sixty so some somehow someone something sometime sometimes
somewhere still such system take ten than that the their them themselves then
thence there thereafter thereby therefore therein thereupon these they thick
thin third this those though three through throughout thru thus to together
too top toward towards twelve twenty two un under until up upon us very via
was we well were what whatever when whence whenever where whereafter whereas
whereby wherein whereupon wherever whether which while whither who whoever
whole whom whose why will with within without would yet you your yours
yourself yourselves
""".split())

_SUFFIXES = ("ingly", "edly", "ness", "ings", "ally", "ing", "ed", "es", "ly", "s")


def stem(word: str) -> str:
    """Light suffix-stripping stem; at least 3 characters survive."""
    w = word.lower()
    for suffix in _SUFFIXES:
        if w.endswith(suffix) and len(w) - len(suffix) >= 3:
            return w[: -len(suffix)]
    return w


class PipelineError(RuntimeError):
    pass


@dataclass(frozen=True)
class EmbeddingMatrix:
    """One fixed-length vector per comment, in corpus order."""

    ids: tuple[str, ...]
    vectors: np.ndarray  # shape (n, dim)
    _rows: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.ids):
            raise ValueError("vectors must be (n_comments, dim)")
        if not np.all(np.isfinite(self.vectors)):
            raise ValueError("embedding matrix contains NaN/Inf")
        object.__setattr__(self, "_rows", {cid: i for i, cid in enumerate(self.ids)})

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, comment_id: str) -> np.ndarray:
        return self.vectors[self._rows[comment_id]]

    def row(self, comment_id: str) -> int:
        return self._rows[comment_id]


@dataclass(frozen=True)
class Keyword:
    term: str  # lowercase unigram or bigram
    score: float  # aggregate embedding similarity over matching comments
    doc_freq: int
    topic_id: Optional[str] = None


@dataclass(frozen=True)
class Topic:
    topic_id: str
    category: str
    description: str
    keywords: tuple[Keyword, ...]


@dataclass(frozen=True)
class TopicScheme:
    topics: tuple[Topic, ...]

    def __post_init__(self):
        terms = [kw.term for t in self.topics for kw in t.keywords]
        if len(terms) != len(set(terms)):
            raise ValueError("topic keyword sets are not pairwise disjoint")

    def topic(self, topic_id: str) -> Topic:
        for t in self.topics:
            if t.topic_id == topic_id:
                return t
        raise KeyError(f"unknown topic {topic_id!r}")

    def all_keywords(self) -> list[Keyword]:
        return [kw for t in self.topics for kw in t.keywords]


@dataclass(frozen=True)
class Span:
    comment_id: str
    start: int  # byte offset into the UTF-8 encoded text
    end: int


@dataclass(frozen=True)
class SpanIndex:
    """keyword term -> spans of its stem matches, in corpus order."""

    spans: dict[str, tuple[Span, ...]]

    def for_keyword(self, term: str) -> tuple[Span, ...]:
        return self.spans.get(term, ())

    def comment_ids(self, term: str) -> list[str]:
        seen: dict[str, None] = {}
        for sp in self.spans.get(term, ()):
            seen.setdefault(sp.comment_id, None)
        return list(seen)


def embed_comments(corpus: Corpus, provider: EmbeddingProvider) -> EmbeddingMatrix:
    """Embed every comment; never returns a partial matrix."""
    texts = [c.text for c in corpus.comments]
    try:
        vectors = provider.embed_texts(texts)
    except ProviderError:
        raise
    except Exception as exc:
        raise ProviderError(f"embedding provider failed: {exc}") from exc
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.shape[0] != len(texts):
        raise ProviderError(
            f"embedding provider returned {vectors.shape[0]} vectors for {len(texts)} comments"
        )
    return EmbeddingMatrix(tuple(corpus.ids()), vectors)


def classify_sentiment(text: str, provider: SentimentProvider) -> SentimentLabel:
    if not text:
        raise ValueError("cannot classify empty text")
    return SentimentLabel.parse(provider.classify(text))


def label_corpus(corpus: Corpus, provider: SentimentProvider) -> Corpus:
    """Corpus with every comment labeled; gold labels bypass the provider."""
    labels = {}
    for c in corpus.comments:
        if c.gold_sentiment is None:
            labels[c.id] = classify_sentiment(c.text, provider)
    return corpus.with_sentiments(labels)


def _candidate_terms(text: str) -> list[str]:
    """Unigram and bigram candidates after stopword removal.

    Bigrams pair tokens adjacent in the filtered stream. Tokens shorter
    than 3 characters are dropped.
    """
    kept = [t for t in tokenize(text) if t not in STOPWORDS and len(t) >= 3]
    candidates = list(kept)
    candidates.extend(f"{a} {b}" for a, b in zip(kept, kept[1:]))
    return candidates


def extract_keywords(
    corpus: Corpus,
    embeddings: EmbeddingMatrix,
    provider: EmbeddingProvider,
    k: int = 20,
) -> list[Keyword]:
    """Top-k corpus keywords.

    Candidates are embedded and compared to their containing comments;
    ranking is by document frequency, tie-broken by the aggregate
    similarity score, then lexicographically. Deterministic for a
    deterministic provider.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(corpus) == 0:
        raise PipelineError("cannot extract keywords from an empty corpus")

    doc_candidates: list[set[str]] = [set(_candidate_terms(c.text)) for c in corpus.comments]
    vocab = sorted(set().union(*doc_candidates)) if doc_candidates else []
    if not vocab:
        raise PipelineError("no keyword candidates survive tokenization")

    cand_vecs = np.asarray(provider.embed_texts(vocab), dtype=np.float64)
    cand_row = {term: i for i, term in enumerate(vocab)}

    doc_freq: dict[str, int] = {term: 0 for term in vocab}
    agg_sim: dict[str, float] = {term: 0.0 for term in vocab}
    for row, cands in enumerate(doc_candidates):
        doc_vec = embeddings.vectors[row]
        for term in cands:
            doc_freq[term] += 1
            agg_sim[term] += max(0.0, cosine(cand_vecs[cand_row[term]], doc_vec))

    ranked = sorted(vocab, key=lambda t: (-doc_freq[t], -agg_sim[t], t))
    return [
        Keyword(term=t, score=agg_sim[t], doc_freq=doc_freq[t])
        for t in ranked[: min(k, len(ranked))]
    ]


class SchemaViolation(GeneratorError):
    """Generator reply does not satisfy the topic-scheme contract."""

    def __init__(self, message: str, raw_response=None):
        super().__init__(message)
        self.raw_response = raw_response


def _parse_generated_scheme(reply: dict, keywords: Sequence[Keyword]) -> TopicScheme:
    cats = reply.get("categories", reply)
    if not isinstance(cats, list):
        raise SchemaViolation("reply has no 'categories' list", reply)
    if len(cats) != 6:
        raise SchemaViolation(f"expected 6 categories, got {len(cats)}", reply)

    by_term = {kw.term: kw for kw in keywords}
    assigned: dict[str, str] = {}
    topics = []
    for i, cat in enumerate(cats):
        if not isinstance(cat, dict):
            raise SchemaViolation(f"category {i} is not an object", reply)
        name = cat.get("category")
        kws = cat.get("keywords")
        if not isinstance(name, str) or not name:
            raise SchemaViolation(f"category {i} missing 'category' name", reply)
        if not isinstance(kws, list) or not kws:
            raise SchemaViolation(f"category {name!r} has no keywords", reply)
        topic_id = f"topic-{i + 1}"
        members = []
        for term in kws:
            if not isinstance(term, str):
                raise SchemaViolation(f"category {name!r} has a non-string keyword", reply)
            t = term.lower().strip()
            if t not in by_term:
                raise SchemaViolation(f"keyword {t!r} was never extracted", reply)
            if t in assigned:
                raise SchemaViolation(
                    f"keyword {t!r} appears in both {assigned[t]!r} and {name!r}", reply
                )
            assigned[t] = name
            members.append(replace(by_term[t], topic_id=topic_id))
        topics.append(
            Topic(
                topic_id=topic_id,
                category=name,
                description=str(cat.get("description", "")),
                keywords=tuple(members),
            )
        )
    missing = set(by_term) - set(assigned)
    if missing:
        raise SchemaViolation(f"keywords missing from reply: {sorted(missing)}", reply)
    return TopicScheme(tuple(topics))


def _cluster_keywords(
    keywords: Sequence[Keyword], provider: EmbeddingProvider, n_topics: int
) -> TopicScheme:
    """Deterministic fallback: group keyword vectors into n_topics clusters.

    Average-linkage agglomerative clustering on cosine distance. Degenerate
    inputs (duplicate vectors collapsing clusters) are fixed up by peeling
    the lowest-ranked member of the largest group into a new singleton, so
    the result always has exactly n_topics non-empty groups.
    """
    from scipy.cluster.hierarchy import fcluster, linkage

    terms = [kw.term for kw in keywords]
    vecs = np.asarray(provider.embed_texts(terms), dtype=np.float64)
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    unit = vecs / norms

    if len(keywords) == n_topics:
        groups = [[i] for i in range(len(keywords))]
    else:
        z = linkage(unit, method="average", metric="cosine")
        flat = fcluster(z, t=n_topics, criterion="maxclust")
        by_cluster: dict[int, list[int]] = {}
        for i, c in enumerate(flat):
            by_cluster.setdefault(int(c), []).append(i)
        groups = [sorted(members) for _, members in sorted(by_cluster.items())]

    rank = {kw.term: i for i, kw in enumerate(keywords)}
    while len(groups) < n_topics:
        groups.sort(key=lambda g: (-len(g), min(rank[terms[i]] for i in g)))
        donor = groups[0]
        peeled = max(donor, key=lambda i: rank[terms[i]])
        donor.remove(peeled)
        groups.append([peeled])

    # order topics by the extraction rank of their best member
    def best_rank(group: list[int]) -> int:
        return min(rank[terms[i]] for i in group)

    groups.sort(key=best_rank)
    topics = []
    for gi, group in enumerate(groups):
        members = sorted(group, key=lambda i: rank[terms[i]])
        topic_id = f"topic-{gi + 1}"
        kws = tuple(replace(keywords[i], topic_id=topic_id) for i in members)
        top_terms = [keywords[i].term for i in members[:3]]
        topics.append(
            Topic(
                topic_id=topic_id,
                category=keywords[members[0]].term.title(),
                description="Comments mentioning " + ", ".join(top_terms),
                keywords=kws,
            )
        )
    return TopicScheme(tuple(topics))


def categorize_keywords(
    keywords: Sequence[Keyword],
    generator: Optional[TextGenerator],
    provider: EmbeddingProvider,
    n_topics: int = 6,
) -> TopicScheme:
    """Group keywords into exactly n_topics named topics.

    With a generator, the categorization prompt is sent and the reply
    schema-validated (exactly n_topics groups, every keyword in exactly one
    group, no extras). One retry on violation, then the deterministic
    clustering fallback. Without a generator, clustering runs directly.
    """
    if len(keywords) < n_topics:
        raise PipelineError(f"need at least {n_topics} keywords, got {len(keywords)}")

    if generator is not None:
        terms = [kw.term for kw in keywords]
        system, user = topic_prompt(terms)
        for _attempt in range(2):
            try:
                reply = generator.complete_json(system, user)
                return _parse_generated_scheme(reply, keywords)
            except GeneratorError:
                continue
    return _cluster_keywords(keywords, provider, n_topics)


def _byte_offsets(text: str) -> list[int]:
    """offsets[i] = byte offset of code point i in the UTF-8 encoding."""
    offsets = [0]
    total = 0
    for ch in text:
        total += len(ch.encode("utf-8"))
        offsets.append(total)
    return offsets


def index_keyword_spans(corpus: Corpus, keywords: Sequence[Keyword]) -> SpanIndex:
    """Spans of case-insensitive stem matches for each keyword.

    A keyword matches where each of its words, stemmed, starts a word in the
    text; the span covers only the matched stem prefixes (so "clean" in
    "cleanliness" spans the first five characters). Offsets are in UTF-8
    bytes. Comments with no match for a keyword simply do not appear in its
    span list.
    """
    patterns = {}
    for kw in keywords:
        stems = [re.escape(stem(w)) for w in kw.term.split()]
        body = r"\w*[\s,;:-]+".join(f"({s})" for s in stems)
        patterns[kw.term] = re.compile(rf"\b{body}", re.IGNORECASE | re.UNICODE)

    spans: dict[str, list[Span]] = {kw.term: [] for kw in keywords}
    for c in corpus.comments:
        offsets = _byte_offsets(c.text)
        for kw in keywords:
            pat = patterns[kw.term]
            last_group = pat.groups
            for m in pat.finditer(c.text):
                start, end = m.start(1), m.end(last_group)
                spans[kw.term].append(Span(c.id, offsets[start], offsets[end]))
    return SpanIndex({term: tuple(sp) for term, sp in spans.items()})
