"""Walk the offline pipeline step by step on the bundled fixture.

Run from the repository root:

    python3 demos/01_pipeline_walkthrough.py
"""

from pathlib import Path

from fairview.corpus import ingest_corpus
from fairview.pipeline import (
    embed_comments,
    extract_keywords,
    categorize_keywords,
    index_keyword_spans,
    label_corpus,
)
from fairview.projection import project_2d
from fairview.hexbin import build_hexbins
from fairview.providers import HashedBowEmbedder, LexiconSentiment

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "hotel_comments.jsonl"

# 1. Ingest: one JSON record per line, order preserved.
corpus = ingest_corpus(FIXTURE)
stats = corpus.stats
print(f"{stats.n_total} comments: {stats.n_pos} positive, {stats.n_neu} neutral, "
      f"{stats.n_neg} negative (ratio {stats.n_pos / stats.n_neg:.2f})")

# 2. Embed with the deterministic hashed bag-of-words fallback.
embedder = HashedBowEmbedder(dim=256)
labeled = label_corpus(corpus, LexiconSentiment())
embeddings = embed_comments(labeled, embedder)
print(f"embedding matrix: {embeddings.vectors.shape}")

# 3. Top-20 keywords by document frequency (similarity breaks ties).
keywords = extract_keywords(labeled, embeddings, embedder, k=20)
print("keywords:", ", ".join(f"{k.term}({k.doc_freq})" for k in keywords[:10]), "...")

# 4. Six topics. Without a text generator this clusters the keyword vectors.
scheme = categorize_keywords(keywords, None, embedder)
for topic in scheme.topics:
    print(f"  {topic.topic_id}: {topic.category} -> {[k.term for k in topic.keywords]}")

# 5. Stem-match spans let the UI highlight keyword hits inside comments.
spans = index_keyword_spans(labeled, scheme.all_keywords())
staff_spans = spans.for_keyword("staff")
example = staff_spans[0]
text = labeled.get(example.comment_id).text
print(f"'staff' matches {len(staff_spans)} places, e.g. {example.comment_id}: {text!r}")

# 6. 2D layout and capacity-bounded hexbins.
points = project_2d(embeddings, method="linear")
bins = build_hexbins(points, capacity=15, cell_size=0.14, corpus=labeled)
print(f"{len(bins)} hexbins, largest holds {max(b.size for b in bins)} comments")
