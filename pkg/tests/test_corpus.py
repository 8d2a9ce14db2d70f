import io
import json

import pytest

from fairview.corpus import (
    Corpus,
    CorpusError,
    SentimentDistribution,
    SentimentLabel,
    corpus_stats,
    ingest_corpus,
    serialize_corpus,
)


def make_file(records):
    return io.StringIO("\n".join(json.dumps(r) for r in records) + "\n")


class TestIngest:
    def test_fixture_counts(self, fixture_path):
        corpus = ingest_corpus(fixture_path)
        stats = corpus.stats
        assert stats.n_total == 574
        assert stats.n_pos == 265
        assert stats.n_neu == 129
        assert stats.n_neg == 180

    def test_fixture_fractions(self, fixture_path):
        stats = ingest_corpus(fixture_path).stats
        assert stats.p_pos == pytest.approx(0.4617, abs=1e-4)
        assert stats.p_neg == pytest.approx(0.3136, abs=1e-4)
        assert stats.n_pos / stats.n_neg == pytest.approx(1.47, abs=0.01)

    def test_empty_file(self):
        corpus = ingest_corpus(io.StringIO(""))
        assert len(corpus) == 0
        assert corpus.stats.n_total == 0

    def test_duplicate_id_names_line(self):
        f = make_file(
            [
                {"id": "c1", "text": "first"},
                {"id": "c1", "text": "second"},
            ]
        )
        with pytest.raises(CorpusError) as err:
            ingest_corpus(f)
        assert err.value.line == 2
        assert "c1" in str(err.value)

    def test_empty_text_rejected(self):
        with pytest.raises(CorpusError) as err:
            ingest_corpus(make_file([{"id": "c1", "text": ""}]))
        assert err.value.line == 1

    def test_malformed_line_rejected(self):
        with pytest.raises(CorpusError) as err:
            ingest_corpus(io.StringIO('{"id": "c1", "text": "ok"}\nnot json\n'))
        assert err.value.line == 2

    def test_missing_id_rejected(self):
        with pytest.raises(CorpusError):
            ingest_corpus(make_file([{"text": "no id"}]))

    def test_preserves_order_and_gold(self):
        corpus = ingest_corpus(
            make_file(
                [
                    {"id": "b", "text": "x", "gold_sentiment": "negative"},
                    {"id": "a", "text": "y", "gold_sentiment": "positive"},
                ]
            )
        )
        assert corpus.ids() == ["b", "a"]
        assert corpus.get("b").sentiment is SentimentLabel.NEGATIVE
        assert corpus.position("a") == 1

    def test_ingestion_deterministic(self, fixture_path):
        a = ingest_corpus(fixture_path)
        b = ingest_corpus(fixture_path)
        assert a.ids() == b.ids()
        assert [c.text for c in a.comments] == [c.text for c in b.comments]
        assert a.stats == b.stats

    def test_roundtrip(self, fixture_path):
        corpus = ingest_corpus(fixture_path)
        again = ingest_corpus(io.StringIO(serialize_corpus(corpus)))
        assert again.comments == corpus.comments


class TestStats:
    def test_counts_sum(self, fixture_path):
        stats = ingest_corpus(fixture_path).stats
        assert stats.n_pos + stats.n_neu + stats.n_neg == stats.n_total
        assert stats.p_pos + stats.p_neu + stats.p_neg == pytest.approx(1.0, abs=1e-9)

    def test_scoped_stats(self):
        corpus = ingest_corpus(
            make_file(
                [
                    {"id": "c1", "text": "a", "gold_sentiment": "positive"},
                    {"id": "c2", "text": "b", "gold_sentiment": "positive"},
                    {"id": "c3", "text": "c", "gold_sentiment": "neutral"},
                    {"id": "c4", "text": "d", "gold_sentiment": "negative"},
                    {"id": "c5", "text": "e", "gold_sentiment": "negative"},
                ]
            )
        )
        scoped = corpus_stats(corpus, ["c1", "c2", "c3", "c4"])
        assert scoped.n_total == 4
        assert scoped.p_pos == 0.5
        assert scoped.p_neu == 0.25
        assert scoped.p_neg == 0.25

    def test_empty_scope_guarded(self):
        corpus = ingest_corpus(make_file([{"id": "c1", "text": "a", "gold_sentiment": "positive"}]))
        scoped = corpus_stats(corpus, [])
        assert scoped.n_total == 0
        assert scoped.p_pos == 0.0 and scoped.p_neg == 0.0

    def test_distribution_from_counts(self):
        d = SentimentDistribution.from_counts(2, 1, 1)
        assert d.n_total == 4
        assert d.p_pos == 0.5

    def test_duplicate_rejected_in_constructor(self):
        from fairview.corpus import Comment

        with pytest.raises(ValueError):
            Corpus((Comment("x", "a"), Comment("x", "b")))


class TestSentimentLabel:
    def test_three_values(self):
        assert {lab.value for lab in SentimentLabel} == {"positive", "neutral", "negative"}

    def test_roundtrip(self):
        for lab in SentimentLabel:
            assert SentimentLabel.parse(lab.value) is lab

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            SentimentLabel.parse("meh")
