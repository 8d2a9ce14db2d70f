"""Engine orchestration: startup pipeline, per-session command processing.

``Engine.build`` runs the preprocessing pipeline (or loads the cached
artifacts for this corpus + config) and wires the immutable layout. The
engine then processes session commands: each command validates its inputs,
appends events, evaluates the reminder triggers, and returns whatever
reminders fired so the API can deliver them inline.

Per-session commands are serialized behind a session lock; the shared
artifacts are immutable, so sessions never contend with each other.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import asdict
from pathlib import Path
from typing import Callable, Optional

from . import board as board_mod
from .cache import (
    ArtifactBundle,
    artifact_key,
    has_artifacts,
    load_artifacts,
    save_artifacts,
)
from .config import EngineConfig
from .corpus import Corpus, SentimentDistribution, corpus_stats, ingest_corpus
from .hexbin import build_hexbins
from .navigation import NavigationEngine
from .overview import OverviewSnapshot, RingModel, build_rings, overview_state
from .pipeline import (
    categorize_keywords,
    embed_comments,
    extract_keywords,
    index_keyword_spans,
    label_corpus,
)
from .projection import project_2d
from .providers import (
    ChatCompletionClient,
    HashedBowEmbedder,
    LexiconSentiment,
    SentenceTransformerEmbedder,
    TextGenerator,
    TransformerSentiment,
)
from .reminders import (
    CoverageStats,
    Reminder,
    ReminderStatus,
    TriggerEvent,
    TriggerKind,
    assemble_reminder,
    balance_should_fire,
    balance_should_rearm,
    coverage_should_fire,
    deviation,
)
from .selection import SelectionIndex, SelectionLike, UnknownSelection, as_selection
from .session import EvidenceSnippet, SessionError, SessionState, SessionStore


def _make_embedder(config: EngineConfig):
    spec = "hash" if config.offline else config.providers.embedding
    if spec == "hash":
        return HashedBowEmbedder(dim=config.pipeline.embedding_dim)
    if spec.startswith("model:"):
        return SentenceTransformerEmbedder(spec.split(":", 1)[1])
    raise ValueError(f"unknown embedding provider {spec!r}")


def _make_sentiment(config: EngineConfig):
    spec = "lexicon" if config.offline else config.providers.sentiment
    if spec == "lexicon":
        return LexiconSentiment()
    if spec.startswith("model:"):
        return TransformerSentiment(spec.split(":", 1)[1])
    raise ValueError(f"unknown sentiment provider {spec!r}")


def _make_generator(config: EngineConfig) -> Optional[TextGenerator]:
    p = config.providers
    if config.offline or not p.generator_base_url or not p.generator_model:
        return None
    return ChatCompletionClient(
        base_url=p.generator_base_url,
        model=p.generator_model,
        api_key_env=p.generator_api_key_env,
        timeout=config.trigger.generator_timeout,
    )


class Engine:
    def __init__(
        self,
        config: EngineConfig,
        bundle: ArtifactBundle,
        generator: Optional[TextGenerator] = None,
        clock: Callable[[], float] = time.time,
        loaded_from_cache: bool = False,
    ):
        self.config = config
        self.bundle = bundle
        self.corpus: Corpus = bundle.corpus
        self.scheme = bundle.scheme
        self.loaded_from_cache = loaded_from_cache
        self.clock = clock
        self.generator = generator

        self.index = SelectionIndex(self.corpus, self.scheme, bundle.span_index)
        self.rings: RingModel = build_rings(self.scheme, bundle.span_index, self.corpus)
        self.navigation = NavigationEngine(self.corpus, bundle.embeddings, self.index)
        self.sessions = SessionStore(log_dir=config.session_dir)

        self._topic_stats: dict[str, SentimentDistribution] = {
            tid: corpus_stats(self.corpus, self.index.resolve(f"topic:{tid}"))
            for tid in self.index.topic_ids()
        }

    # -- startup ---------------------------------------------------------

    @classmethod
    def build(
        cls,
        config: EngineConfig,
        generator: Optional[TextGenerator] = None,
        topic_generator: Optional[TextGenerator] = None,
        clock: Callable[[], float] = time.time,
    ) -> "Engine":
        corpus_path = Path(config.corpus_path)
        if not corpus_path.exists():
            raise FileNotFoundError(f"corpus file not found: {corpus_path}")
        corpus_bytes = corpus_path.read_bytes()

        fingerprint = {
            "pipeline": asdict(config.pipeline),
            "embedding": "hash" if config.offline else config.providers.embedding,
            "sentiment": "lexicon" if config.offline else config.providers.sentiment,
        }
        key = artifact_key(corpus_bytes, fingerprint)

        raw = ingest_corpus(corpus_path)
        loaded = False
        if config.cache_dir and has_artifacts(config.cache_dir, key):
            bundle = load_artifacts(config.cache_dir, key, raw)
            loaded = True
        else:
            bundle = cls.compute_artifacts(raw, config, topic_generator)
            if config.cache_dir:
                save_artifacts(config.cache_dir, key, bundle)

        if generator is None:
            generator = _make_generator(config)
        return cls(config, bundle, generator=generator, clock=clock, loaded_from_cache=loaded)

    @classmethod
    def compute_artifacts(
        cls,
        raw: Corpus,
        config: EngineConfig,
        topic_generator: Optional[TextGenerator] = None,
    ) -> ArtifactBundle:
        embedder = _make_embedder(config)
        sentiment = _make_sentiment(config)
        if topic_generator is None and not config.offline:
            topic_generator = _make_generator(config)

        corpus = label_corpus(raw, sentiment)
        embeddings = embed_comments(corpus, embedder)
        keywords = extract_keywords(corpus, embeddings, embedder, k=config.pipeline.keyword_count)
        scheme = categorize_keywords(
            keywords, topic_generator, embedder, n_topics=config.pipeline.topic_count
        )
        span_index = index_keyword_spans(corpus, scheme.all_keywords())
        method = "linear" if config.offline else config.pipeline.projection
        points = project_2d(embeddings, seed=config.pipeline.seed, method=method)
        bins = build_hexbins(
            points,
            capacity=config.pipeline.bin_capacity,
            cell_size=config.pipeline.cell_size,
            corpus=corpus,
        )
        return ArtifactBundle(
            corpus, embeddings, tuple(keywords), scheme, span_index, tuple(points), tuple(bins)
        )

    # -- helpers ---------------------------------------------------------

    def topic_label(self, topic_id: str) -> str:
        return self.scheme.topic(topic_id).category

    def topic_stats(self, topic_id: str) -> SentimentDistribution:
        try:
            return self._topic_stats[topic_id]
        except KeyError:
            raise UnknownSelection(f"unknown topic {topic_id!r}") from None

    def _now(self, state: SessionState) -> float:
        return max(float(self.clock()), state.last_ts)

    def _next_event(self, state: SessionState, kind: str, **payload) -> dict:
        return {"seq": state.seq + 1, "ts": self._now(state), "kind": kind, **payload}

    # -- session lifecycle -----------------------------------------------

    def create_session(self, session_id: Optional[str] = None) -> SessionState:
        sid = session_id or f"s-{uuid.uuid4().hex[:12]}"
        state = self.sessions.create(sid)
        self.sessions.append(state, self._next_event(state, "session_created", session_id=sid))
        return state

    def get_session(self, session_id: str) -> SessionState:
        return self.sessions.get(session_id)

    def set_selection(self, session_id: str, selection: Optional[str]) -> dict:
        state = self.sessions.get(session_id)
        with self.sessions.lock(session_id):
            if selection is not None:
                self.index.resolve(selection)  # validate
            self.sessions.append(
                state, self._next_event(state, "selection_changed", selection=selection)
            )
        return {"seq": state.seq, "selection": selection}

    # -- events ----------------------------------------------------------

    def record_view(self, session_id: str, comment_id: str, topic_id: str) -> dict:
        """Record a viewport view; idempotent per (comment, topic).

        Returns the fired coverage trigger (if any) with its assembled
        reminder, delivered inline.
        """
        state = self.sessions.get(session_id)
        if comment_id not in self.corpus:
            raise UnknownSelection(f"unknown comment {comment_id!r}")
        if not self.index.contains(f"topic:{topic_id}", comment_id):
            raise SessionError(
                f"comment {comment_id!r} is not in topic {topic_id!r}'s filtered set"
            )

        with self.sessions.lock(session_id):
            if comment_id in state.viewed_in_topic(topic_id):
                return {"seq": state.seq, "events": [], "reminders": []}

            self.sessions.append(
                state,
                self._next_event(state, "view", comment_id=comment_id, topic_id=topic_id),
            )

            events: list[TriggerEvent] = []
            reminders: list[Reminder] = []
            total = len(self.index.resolve(f"topic:{topic_id}"))
            seen = len(state.viewed_in_topic(topic_id))
            if coverage_should_fire(
                seen, total, self.config.trigger, state.has_coverage_fired(topic_id)
            ):
                trigger = TriggerEvent(
                    kind=TriggerKind.COVERAGE,
                    topic_id=topic_id,
                    evidence=CoverageStats(
                        topic_id=topic_id,
                        viewed=seen,
                        total=total,
                        fraction=seen / total,
                        threshold=self.config.trigger.coverage_threshold,
                    ),
                    fired_at=state.last_ts,
                )
                reminder = self._create_reminder(state, trigger)
                events.append(trigger)
                reminders.append(reminder)

        return {
            "seq": state.seq,
            "events": [e.to_dict() for e in events],
            "reminders": [r.to_dict() for r in reminders],
        }

    def mark_useful(self, session_id: str, comment_id: str, useful: bool) -> dict:
        """Toggle a useful mark and re-evaluate the balance trigger.

        Evaluation runs for every topic containing the comment; each topic
        has its own arm state. Unmarking re-evaluates too (and is how a
        fired topic can re-arm).
        """
        state = self.sessions.get(session_id)
        if comment_id not in self.corpus:
            raise UnknownSelection(f"unknown comment {comment_id!r}")

        with self.sessions.lock(session_id):
            currently = comment_id in state.useful
            if currently == useful:
                return {"seq": state.seq, "events": [], "reminders": []}

            self.sessions.append(
                state, self._next_event(state, "mark", comment_id=comment_id, useful=useful)
            )

            events: list[TriggerEvent] = []
            reminders: list[Reminder] = []
            for topic_id in self.index.topics_of(comment_id):
                stats = self._deviation_for(state, topic_id)
                if balance_should_fire(stats, self.config.trigger, state.is_armed(topic_id)):
                    trigger = TriggerEvent(
                        kind=TriggerKind.BALANCE,
                        topic_id=topic_id,
                        evidence=stats,
                        fired_at=state.last_ts,
                    )
                    reminder = self._create_reminder(state, trigger)
                    events.append(trigger)
                    reminders.append(reminder)
                elif not state.is_armed(topic_id) and balance_should_rearm(
                    stats, self.config.trigger
                ):
                    self.sessions.append(
                        state, self._next_event(state, "balance_rearmed", topic_id=topic_id)
                    )

        return {
            "seq": state.seq,
            "events": [e.to_dict() for e in events],
            "reminders": [r.to_dict() for r in reminders],
        }

    def _deviation_for(self, state: SessionState, topic_id: str):
        topic_ids = set(self.index.resolve(f"topic:{topic_id}"))
        labels = [
            self.corpus.get(cid).sentiment.value
            if self.corpus.get(cid).sentiment is not None
            else None
            for cid in state.useful
            if cid in topic_ids
        ]
        return deviation(labels, self.topic_stats(topic_id), topic_id)

    def save_snippet(self, session_id: str, comment_id: str, start: int, end: int) -> dict:
        """Save a highlighted fragment; offsets are UTF-8 byte positions."""
        state = self.sessions.get(session_id)
        comment = self.corpus.get(comment_id)  # raises on unknown id
        encoded = comment.text.encode("utf-8")
        if not (0 <= start < end <= len(encoded)):
            raise SessionError(
                f"span [{start}, {end}) out of bounds for comment of {len(encoded)} bytes"
            )
        try:
            text = encoded[start:end].decode("utf-8")
        except UnicodeDecodeError:
            raise SessionError("span does not align with character boundaries") from None

        topics = self.index.topics_of(comment_id)
        with self.sessions.lock(session_id):
            snippet = EvidenceSnippet(
                snippet_id=f"sn-{state.seq + 1}",
                comment_id=comment_id,
                start=start,
                end=end,
                text=text,
                topic_id=topics[0] if topics else None,
                sentiment=comment.sentiment,
                created_at=self._now(state),
            )
            self.sessions.append(
                state, self._next_event(state, "snippet", snippet=snippet.to_dict())
            )
        return {"seq": state.seq, "snippet": snippet.to_dict()}

    # -- reminders ---------------------------------------------------------

    def _create_reminder(self, state: SessionState, trigger: TriggerEvent) -> Reminder:
        reminder = assemble_reminder(
            reminder_id=f"rem-{state.seq + 1}",
            trigger=trigger,
            topic_label=self.topic_label(trigger.topic_id),
            recent_texts=self._recent_engaged_texts(state, trigger.topic_id),
            generator=self.generator,
            suggest_topic=self._suggest_other_topic(state, trigger.topic_id),
        )
        self.sessions.append(
            state, self._next_event(state, "reminder_created", reminder=reminder.to_dict())
        )
        return reminder

    def _recent_engaged_texts(self, state: SessionState, topic_id: str, limit: int = 10) -> list[str]:
        """Texts of the most recently viewed-or-marked comments in the topic."""
        members = set(self.index.resolve(f"topic:{topic_id}"))
        seen: list[str] = []
        for event in reversed(state.event_log):
            if event["kind"] not in ("view", "mark"):
                continue
            cid = event["comment_id"]
            if cid in members and cid not in seen:
                seen.append(cid)
                if len(seen) >= limit:
                    break
        return [self.corpus.get(cid).text for cid in seen]

    def _suggest_other_topic(self, state: SessionState, current_topic: str) -> Optional[str]:
        """Least-covered other topic, the nudge target for coverage reminders."""
        best = None
        for tid in self.index.topic_ids():
            if tid == current_topic:
                continue
            total = len(self.index.resolve(f"topic:{tid}"))
            if total == 0:
                continue
            frac = len(state.viewed_in_topic(tid) & set(self.index.resolve(f"topic:{tid}"))) / total
            if best is None or frac < best[0]:
                best = (frac, tid)
        return self.topic_label(best[1]) if best else None

    def resolve_reminder(
        self, session_id: str, reminder_id: str, action: str, user_mind: Optional[str] = None
    ) -> dict:
        if action not in ("add", "dismiss"):
            raise SessionError(f"unknown action {action!r}; use add or dismiss")
        state = self.sessions.get(session_id)
        with self.sessions.lock(session_id):
            reminder = state.reminders.get(reminder_id)
            if reminder is None:
                raise SessionError(f"unknown reminder {reminder_id!r}")
            if reminder.status is not ReminderStatus.PENDING:
                raise SessionError(
                    f"reminder {reminder_id!r} already resolved ({reminder.status.value})"
                )
            status = "added" if action == "add" else "dismissed"
            self.sessions.append(
                state,
                self._next_event(
                    state,
                    "reminder_resolved",
                    reminder_id=reminder_id,
                    action=status,
                    user_mind=user_mind,
                ),
            )
        return {"seq": state.seq, "reminder": state.reminders[reminder_id].to_dict()}

    # -- board -------------------------------------------------------------

    def add_thought(self, session_id: str, text: str, revises: Optional[str] = None) -> dict:
        if not text or not text.strip():
            raise SessionError("thought text must be non-empty")
        state = self.sessions.get(session_id)
        with self.sessions.lock(session_id):
            thought_id = f"th-{state.seq + 1}"
            self.sessions.append(
                state,
                self._next_event(
                    state, "thought", thought_id=thought_id, text=text, revises=revises
                ),
            )
        return {"seq": state.seq, "thought": state.thoughts[-1].to_dict()}

    def board(self, session_id: str) -> dict:
        state = self.sessions.get(session_id)
        return {"seq": state.seq, "board": board_mod.board_snapshot(state).to_dict()}

    def export_board(self, session_id: str, format: str = "markdown") -> str:
        state = self.sessions.get(session_id)
        return board_mod.export_board(state, format=format)

    # -- read models ---------------------------------------------------------

    def overview(self, session_id: str, selection: SelectionLike = None) -> OverviewSnapshot:
        state = self.sessions.get(session_id)
        return overview_state(
            self.bundle.bins,
            self.rings,
            self.corpus,
            self.index,
            state.viewed_global,
            selection,
        )

    def progress(self, session_id: str, selection: SelectionLike = None) -> dict:
        state = self.sessions.get(session_id)
        selected = self.index.resolve(as_selection(selection))
        viewed = sum(1 for cid in selected if cid in state.viewed_global)
        return {"viewed": viewed, "total": len(selected)}

    def stream_page(
        self, session_id: str, topic_id: str, cursor: int = 0, page_size: int = 10
    ) -> dict:
        state = self.sessions.get(session_id)
        page = self.navigation.stream_page(topic_id, cursor, page_size, state.viewed_global)
        page["seq"] = state.seq
        page["comments"] = [self._comment_payload(cid, topic_id) for cid in page["comment_ids"]]
        return page

    def _comment_payload(self, comment_id: str, topic_id: Optional[str] = None) -> dict:
        c = self.corpus.get(comment_id)
        highlights = []
        terms = (
            [kw.term for kw in self.scheme.topic(topic_id).keywords]
            if topic_id
            else [kw.term for kw in self.scheme.all_keywords()]
        )
        for term in terms:
            for span in self.bundle.span_index.for_keyword(term):
                if span.comment_id == comment_id:
                    highlights.append({"keyword": term, "start": span.start, "end": span.end})
        return {
            "id": c.id,
            "text": c.text,
            "sentiment": c.sentiment.value if c.sentiment else None,
            "highlights": sorted(highlights, key=lambda h: (h["start"], h["end"])),
        }
