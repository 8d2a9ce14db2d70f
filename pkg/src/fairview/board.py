"""Synthesis board: the reader's consolidated workspace.

The board is a view over session state: instant thoughts, evidence
snippets, and the reminders the reader chose to keep (status "added";
dismissed ones never appear). Exports come in two formats: markdown for
humans and a canonical JSON document that round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .reminders import Reminder, ReminderStatus
from .session import EvidenceSnippet, SessionState, Thought, reminder_from_dict


@dataclass(frozen=True)
class BoardSnapshot:
    session_id: str
    thoughts: tuple[Thought, ...]
    snippets: tuple[EvidenceSnippet, ...]
    reminders: tuple[Reminder, ...]  # only status == added

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "thoughts": [t.to_dict() for t in self.thoughts],
            "snippets": [s.to_dict() for s in self.snippets],
            "reminders": [r.to_dict() for r in self.reminders],
        }


def board_snapshot(state: SessionState) -> BoardSnapshot:
    """Current board content, each modality in creation order."""
    added = [r for r in state.reminders.values() if r.status is ReminderStatus.ADDED]
    added.sort(key=lambda r: r.trigger.fired_at)
    return BoardSnapshot(
        session_id=state.session_id,
        thoughts=tuple(state.thoughts),
        snippets=tuple(state.snippets),
        reminders=tuple(added),
    )


def export_markdown(snapshot: BoardSnapshot) -> str:
    lines = [f"# Synthesis Board ({snapshot.session_id})", ""]

    lines.append("## Instant Thoughts")
    lines.append("")
    for t in snapshot.thoughts:
        suffix = f" (revises {t.revises})" if t.revises else ""
        lines.append(f"- [{t.thought_id}]{suffix} {t.text}")
    lines.append("")

    lines.append("## Evidence Snippets")
    lines.append("")
    for s in snapshot.snippets:
        sentiment = s.sentiment.value if s.sentiment else "unlabeled"
        topic = s.topic_id or "no topic"
        lines.append(f'- [{s.snippet_id}] from {s.comment_id} ({sentiment}, {topic}): "{s.text}"')
    lines.append("")

    lines.append("## Saved Reminders")
    lines.append("")
    for r in snapshot.reminders:
        grounding = ", ".join(f"{k}={_fmt(v)}" for k, v in r.grounding.items())
        lines.append(f"- [{r.reminder_id}] {r.trigger.kind.value} on {r.trigger.topic_id}")
        lines.append(f"  - grounding: {grounding}")
        lines.append(f"  - summary: {r.summary}")
        lines.append(f"  - suggestion: {r.suggestion}")
        if r.user_mind:
            lines.append(f"  - your note: {r.user_mind}")
    lines.append("")
    return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def export_structured(snapshot: BoardSnapshot) -> str:
    """Canonical JSON export; byte-identical for identical boards."""
    return json.dumps(snapshot.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def import_structured(document: str) -> BoardSnapshot:
    """Inverse of export_structured."""
    d = json.loads(document)
    return BoardSnapshot(
        session_id=d["session_id"],
        thoughts=tuple(
            Thought(
                thought_id=t["thought_id"],
                text=t["text"],
                created_at=t["created_at"],
                revises=t.get("revises"),
            )
            for t in d["thoughts"]
        ),
        snippets=tuple(EvidenceSnippet.from_dict(s) for s in d["snippets"]),
        reminders=tuple(reminder_from_dict(r) for r in d["reminders"]),
    )


def export_board(state: SessionState, format: str = "markdown") -> str:
    if format == "markdown":
        return export_markdown(board_snapshot(state))
    if format == "structured":
        return export_structured(board_snapshot(state))
    raise ValueError(f"unknown export format {format!r}; use markdown or structured")
