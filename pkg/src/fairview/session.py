"""Per-reader session state, event-sourced.

Every state change is an appended event; SessionState.apply is the only
transition function. Replaying a session's event log from an empty state
reproduces the exact same state, including reminders, because events carry
fully assembled payloads (generated reminder text is frozen into its
reminder_created event and is never regenerated on replay).

Persistence is an append-only JSONL log per session, replayed on restart.
One logical writer exists per session; the store serializes appends per
session id, and distinct sessions are fully independent.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .corpus import SentimentLabel
from .reminders import (
    CoverageStats,
    DeviationStats,
    Reminder,
    ReminderStatus,
    TriggerEvent,
    TriggerKind,
)


class SessionError(ValueError):
    pass


@dataclass(frozen=True)
class EvidenceSnippet:
    snippet_id: str
    comment_id: str
    start: int  # byte offsets into the source comment's UTF-8 text
    end: int
    text: str
    topic_id: Optional[str]
    sentiment: Optional[SentimentLabel]
    created_at: float

    def to_dict(self) -> dict:
        return {
            "snippet_id": self.snippet_id,
            "comment_id": self.comment_id,
            "start": self.start,
            "end": self.end,
            "text": self.text,
            "topic_id": self.topic_id,
            "sentiment": self.sentiment.value if self.sentiment else None,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvidenceSnippet":
        return cls(
            snippet_id=d["snippet_id"],
            comment_id=d["comment_id"],
            start=d["start"],
            end=d["end"],
            text=d["text"],
            topic_id=d.get("topic_id"),
            sentiment=SentimentLabel.parse(d["sentiment"]) if d.get("sentiment") else None,
            created_at=d["created_at"],
        )


@dataclass(frozen=True)
class Thought:
    thought_id: str
    text: str
    created_at: float
    revises: Optional[str] = None  # edits create new versions

    def to_dict(self) -> dict:
        return {
            "thought_id": self.thought_id,
            "text": self.text,
            "created_at": self.created_at,
            "revises": self.revises,
        }


def _trigger_from_dict(d: dict) -> TriggerEvent:
    kind = TriggerKind(d["kind"])
    ev = d["evidence"]
    if kind is TriggerKind.BALANCE:
        evidence = DeviationStats(
            topic_id=ev["topic_id"],
            n_useful=ev["n_useful"],
            n_useful_pos=ev["n_useful_pos"],
            n_useful_neg=ev["n_useful_neg"],
            local_pos=ev["local_pos"],
            local_neg=ev["local_neg"],
            global_pos=ev["global_pos"],
            global_neg=ev["global_neg"],
            delta_p=ev["delta_p"],
            defined=ev["defined"],
        )
    else:
        evidence = CoverageStats(
            topic_id=ev["topic_id"],
            viewed=ev["viewed"],
            total=ev["total"],
            fraction=ev["fraction"],
            threshold=ev["threshold"],
        )
    return TriggerEvent(kind=kind, topic_id=d["topic_id"], evidence=evidence, fired_at=d["fired_at"])


def reminder_from_dict(d: dict) -> Reminder:
    return Reminder(
        reminder_id=d["reminder_id"],
        trigger=_trigger_from_dict(d["trigger"]),
        grounding=d["grounding"],
        summary=d["summary"],
        suggestion=d["suggestion"],
        user_mind=d.get("user_mind"),
        status=ReminderStatus(d["status"]),
        generator_used=d.get("generator_used", False),
    )


class SessionState:
    """Mutable per-session state, rebuilt purely from its event log."""

    def __init__(self, session_id: str):
        self.session_id = session_id
        self.seq = 0
        self.last_ts = 0.0
        self.viewed: dict[str, set[str]] = {}
        self.viewed_global: set[str] = set()
        self.useful: dict[str, float] = {}
        self.snippets: list[EvidenceSnippet] = []
        self.thoughts: list[Thought] = []
        self.reminders: dict[str, Reminder] = {}
        self.coverage_fired: dict[str, bool] = {}
        self.balance_state: dict[str, str] = {}  # topic -> "armed" | "fired"
        self.active_selection: Optional[str] = None
        self.event_log: list[dict] = []

    def is_armed(self, topic_id: str) -> bool:
        return self.balance_state.get(topic_id, "armed") == "armed"

    def has_coverage_fired(self, topic_id: str) -> bool:
        return self.coverage_fired.get(topic_id, False)

    def viewed_in_topic(self, topic_id: str) -> set[str]:
        return self.viewed.get(topic_id, set())

    def pending_reminders(self) -> list[Reminder]:
        return [r for r in self.reminders.values() if r.status is ReminderStatus.PENDING]

    def apply(self, event: dict) -> None:
        """Apply one event. Deterministic; the only state transition path."""
        kind = event["kind"]
        ts = event["ts"]
        if ts < self.last_ts:
            raise SessionError("event timestamps must be non-decreasing")
        if event["seq"] != self.seq + 1:
            raise SessionError(f"event seq {event['seq']} does not follow {self.seq}")

        if kind == "session_created":
            pass
        elif kind == "selection_changed":
            self.active_selection = event["selection"]
        elif kind == "view":
            topic = event["topic_id"]
            self.viewed.setdefault(topic, set()).add(event["comment_id"])
            self.viewed_global.add(event["comment_id"])
        elif kind == "mark":
            if event["useful"]:
                self.useful[event["comment_id"]] = ts
            else:
                self.useful.pop(event["comment_id"], None)
        elif kind == "snippet":
            self.snippets.append(EvidenceSnippet.from_dict(event["snippet"]))
        elif kind == "thought":
            self.thoughts.append(
                Thought(
                    thought_id=event["thought_id"],
                    text=event["text"],
                    created_at=ts,
                    revises=event.get("revises"),
                )
            )
        elif kind == "balance_rearmed":
            self.balance_state[event["topic_id"]] = "armed"
        elif kind == "reminder_created":
            reminder = reminder_from_dict(event["reminder"])
            self.reminders[reminder.reminder_id] = reminder
            if reminder.trigger.kind is TriggerKind.BALANCE:
                self.balance_state[reminder.trigger.topic_id] = "fired"
            else:
                self.coverage_fired[reminder.trigger.topic_id] = True
        elif kind == "reminder_resolved":
            rid = event["reminder_id"]
            if rid not in self.reminders:
                raise SessionError(f"unknown reminder {rid!r}")
            old = self.reminders[rid]
            self.reminders[rid] = Reminder(
                reminder_id=old.reminder_id,
                trigger=old.trigger,
                grounding=old.grounding,
                summary=old.summary,
                suggestion=old.suggestion,
                user_mind=event.get("user_mind"),
                status=ReminderStatus(event["action"]),
                generator_used=old.generator_used,
            )
        else:
            raise SessionError(f"unknown event kind {kind!r}")

        self.seq = event["seq"]
        self.last_ts = ts
        self.event_log.append(event)


def replay(session_id: str, events: Iterable[dict]) -> SessionState:
    """Rebuild a session from its recorded event log."""
    state = SessionState(session_id)
    for event in events:
        state.apply(event)
    return state


class SessionStore:
    """Holds live sessions; optionally persists each event log to disk."""

    def __init__(self, log_dir: Optional[Path] = None):
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._log_dir = Path(log_dir) if log_dir else None
        if self._log_dir:
            self._log_dir.mkdir(parents=True, exist_ok=True)
            for path in sorted(self._log_dir.glob("*.jsonl")):
                sid = path.stem
                events = [
                    json.loads(line)
                    for line in path.read_text(encoding="utf-8").splitlines()
                    if line.strip()
                ]
                self._sessions[sid] = replay(sid, events)

    def create(self, session_id: str) -> SessionState:
        with self._registry_lock:
            if session_id in self._sessions:
                raise SessionError(f"session {session_id!r} already exists")
            state = SessionState(session_id)
            self._sessions[session_id] = state
            self._locks[session_id] = threading.Lock()
        return state

    def get(self, session_id: str) -> SessionState:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionError(f"unknown session {session_id!r}") from None

    def ids(self) -> list[str]:
        return list(self._sessions)

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def append(self, state: SessionState, event: dict) -> None:
        """Apply the event and, when persistence is on, write it through."""
        state.apply(event)
        if self._log_dir:
            path = self._log_dir / f"{state.session_id}.jsonl"
            with path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, ensure_ascii=False) + "\n")
