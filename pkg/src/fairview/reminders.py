"""Trigger rules and reminder assembly.

Two complementary triggers drive the reminders:

* balance: after every useful-mark update, the sentiment mix of a topic's
  useful-marked comments is compared against the topic's corpus mix; the
  trigger fires when the larger of the positive/negative deviations
  strictly exceeds the threshold (default 0.20). A per-topic arm state
  prevents repeat fires until the deviation falls back under the threshold.
* coverage: fires once per topic, on the first view event that brings the
  topic's distinct-view count to ceil(threshold * topic_size) (default
  threshold 0.70). Never re-fires.

Both evaluations are skipped when their denominators would be zero. Every
fired trigger is turned into a three-part reminder: the verifiable counts,
a generated (or templated) summary + suggestion, and a free-text field for
the reader's own take.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .corpus import SentimentDistribution
from .providers import GeneratorError, TextGenerator
from .prompts import reminder_prompt


@dataclass(frozen=True)
class TriggerConfig:
    delta_theta: float = 0.20
    coverage_threshold: float = 0.70
    rearm_policy: str = "on_drop_below_theta"
    generator_timeout: float = 2.0

    def __post_init__(self):
        if not 0 < self.delta_theta < 1:
            raise ValueError("delta_theta must be in (0, 1)")
        if not 0 < self.coverage_threshold <= 1:
            raise ValueError("coverage_threshold must be in (0, 1]")
        if self.rearm_policy != "on_drop_below_theta":
            raise ValueError(f"unknown rearm policy {self.rearm_policy!r}")


@dataclass(frozen=True)
class DeviationStats:
    """Sentiment deviation of a topic's useful marks from its corpus mix.

    Denominators count all useful marks including neutral ones. When
    nothing is marked yet the deviation is reported as zero with
    ``defined`` False, and the trigger never evaluates.
    """

    topic_id: str
    n_useful: int
    n_useful_pos: int
    n_useful_neg: int
    local_pos: float
    local_neg: float
    global_pos: float
    global_neg: float
    delta_p: float
    defined: bool

    def to_dict(self) -> dict:
        return {
            "topic_id": self.topic_id,
            "n_useful": self.n_useful,
            "n_useful_pos": self.n_useful_pos,
            "n_useful_neg": self.n_useful_neg,
            "local_pos": self.local_pos,
            "local_neg": self.local_neg,
            "global_pos": self.global_pos,
            "global_neg": self.global_neg,
            "delta_p": self.delta_p,
            "defined": self.defined,
        }


@dataclass(frozen=True)
class CoverageStats:
    topic_id: str
    viewed: int
    total: int
    fraction: float
    threshold: float

    def to_dict(self) -> dict:
        return {
            "topic_id": self.topic_id,
            "viewed": self.viewed,
            "total": self.total,
            "fraction": self.fraction,
            "threshold": self.threshold,
        }


class TriggerKind(str, enum.Enum):
    BALANCE = "balance"
    COVERAGE = "coverage"


@dataclass(frozen=True)
class TriggerEvent:
    kind: TriggerKind
    topic_id: str
    evidence: Union[DeviationStats, CoverageStats]
    fired_at: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "topic_id": self.topic_id,
            "evidence": self.evidence.to_dict(),
            "fired_at": self.fired_at,
        }


def deviation(
    useful_labels: Sequence[Optional[str]],
    global_stats: SentimentDistribution,
    topic_id: str = "",
) -> DeviationStats:
    """Deviation of the useful-mark mix from the topic's corpus mix.

    ``useful_labels`` are the sentiment values ("positive"/"neutral"/
    "negative") of the comments currently marked useful within the topic.
    Computed in double precision; inputs this size keep the error well
    under 1e-12.
    """
    n = len(useful_labels)
    n_pos = sum(1 for lab in useful_labels if lab == "positive")
    n_neg = sum(1 for lab in useful_labels if lab == "negative")
    if n == 0:
        return DeviationStats(
            topic_id, 0, 0, 0, 0.0, 0.0, global_stats.p_pos, global_stats.p_neg, 0.0, False
        )
    local_pos = n_pos / n
    local_neg = n_neg / n
    delta_p = max(abs(local_neg - global_stats.p_neg), abs(local_pos - global_stats.p_pos))
    return DeviationStats(
        topic_id,
        n,
        n_pos,
        n_neg,
        local_pos,
        local_neg,
        global_stats.p_pos,
        global_stats.p_neg,
        delta_p,
        True,
    )


def balance_should_fire(stats: DeviationStats, config: TriggerConfig, armed: bool) -> bool:
    """Strict inequality: a deviation exactly at the threshold does not fire."""
    return armed and stats.defined and stats.n_useful > 0 and stats.delta_p > config.delta_theta


def balance_should_rearm(stats: DeviationStats, config: TriggerConfig) -> bool:
    """A fired topic re-arms once the deviation falls back to the threshold or below."""
    return not stats.defined or stats.delta_p <= config.delta_theta


def coverage_requirement(total: int, threshold: float) -> int:
    """Distinct views needed before the coverage trigger fires: ceil(threshold * total).

    Computed on exact rationals; the float expression 0.7 * 70 lands just
    above 49 and would otherwise demand one view too many.
    """
    frac = Fraction(threshold).limit_denominator(1_000_000)
    return math.ceil(frac * total)


def coverage_should_fire(
    viewed: int, total: int, config: TriggerConfig, already_fired: bool
) -> bool:
    if already_fired or total < 1:
        return False
    return viewed >= coverage_requirement(total, config.coverage_threshold)


class ReminderStatus(str, enum.Enum):
    PENDING = "pending"
    ADDED = "added"
    DISMISSED = "dismissed"


@dataclass(frozen=True)
class Reminder:
    reminder_id: str
    trigger: TriggerEvent
    grounding: dict
    summary: str
    suggestion: str
    user_mind: Optional[str] = None
    status: ReminderStatus = ReminderStatus.PENDING
    generator_used: bool = False

    def to_dict(self) -> dict:
        return {
            "reminder_id": self.reminder_id,
            "trigger": self.trigger.to_dict(),
            "grounding": self.grounding,
            "summary": self.summary,
            "suggestion": self.suggestion,
            "user_mind": self.user_mind,
            "status": self.status.value,
            "generator_used": self.generator_used,
        }


def _pct(x: float) -> str:
    return f"{round(x * 100)}%"


def fallback_balance_text(stats: DeviationStats, topic_label: str) -> tuple[str, str]:
    lean = "negative" if stats.n_useful_neg >= stats.n_useful_pos else "positive"
    other = "positive" if lean == "negative" else "negative"
    n_lean = stats.n_useful_neg if lean == "negative" else stats.n_useful_pos
    global_frac = stats.global_neg if lean == "negative" else stats.global_pos
    summary = (
        f"{n_lean} of the {stats.n_useful} comments you marked useful on "
        f"{topic_label} are {lean} ({_pct(n_lean / stats.n_useful)}), while "
        f"{lean} comments make up {_pct(global_frac)} of this topic overall."
    )
    suggestion = (
        f"You have mainly read {lean} opinions—consider checking the other side "
        f"and looking at a few {other} comments before settling on a judgment."
    )
    return summary, suggestion


def fallback_coverage_text(
    stats: CoverageStats, topic_label: str, suggest_topic: Optional[str]
) -> tuple[str, str]:
    summary = (
        f"You have viewed {stats.viewed} of the {stats.total} comments on "
        f"{topic_label} ({_pct(stats.fraction)})."
    )
    suggestion = (
        f"You have explored {_pct(stats.fraction)} of the comments on this topic—"
        "take a moment to summarize key insights"
    )
    if suggest_topic:
        suggestion += f" and explore other topics, such as '{suggest_topic}'."
    else:
        suggestion += " before moving on."
    return summary, suggestion


def statistics_line(trigger: TriggerEvent) -> str:
    ev = trigger.evidence
    if isinstance(ev, DeviationStats):
        return (
            f"useful marks: {ev.n_useful} ({ev.n_useful_pos} positive, {ev.n_useful_neg} "
            f"negative); topic overall: {_pct(ev.global_pos)} positive, "
            f"{_pct(ev.global_neg)} negative; deviation {ev.delta_p:.4f}"
        )
    return f"viewed {ev.viewed} of {ev.total} comments ({_pct(ev.fraction)})"


def trigger_reason(trigger: TriggerEvent, topic_label: str) -> str:
    if trigger.kind is TriggerKind.BALANCE:
        return (
            f"the sentiment mix of comments marked useful on '{topic_label}' deviates "
            "strongly from the topic's overall mix"
        )
    return f"a large share of the comments on '{topic_label}' has been viewed"


def assemble_reminder(
    reminder_id: str,
    trigger: TriggerEvent,
    topic_label: str,
    recent_texts: Sequence[str],
    generator: Optional[TextGenerator] = None,
    suggest_topic: Optional[str] = None,
) -> Reminder:
    """Build the three-part reminder for a fired trigger.

    The generator is asked for a summary + suggestion using the recent
    comments; any failure, timeout or malformed reply falls back to the
    deterministic template, so assembly is total and never surfaces
    provider errors to the reader.
    """
    ev = trigger.evidence
    if isinstance(ev, DeviationStats):
        grounding = {
            "n_useful": ev.n_useful,
            "n_useful_pos": ev.n_useful_pos,
            "n_useful_neg": ev.n_useful_neg,
            "local_pos": ev.local_pos,
            "local_neg": ev.local_neg,
            "global_pos": ev.global_pos,
            "global_neg": ev.global_neg,
            "delta_p": ev.delta_p,
        }
        summary, suggestion = fallback_balance_text(ev, topic_label)
    else:
        grounding = {"viewed": ev.viewed, "total": ev.total, "fraction": ev.fraction}
        summary, suggestion = fallback_coverage_text(ev, topic_label, suggest_topic)

    generator_used = False
    if generator is not None:
        system, user = reminder_prompt(
            trigger_reason(trigger, topic_label), statistics_line(trigger), list(recent_texts)
        )
        try:
            reply = generator.complete_json(system, user)
            gen_summary = reply.get("summary")
            gen_suggestion = reply.get("suggestion")
            if (
                isinstance(gen_summary, str)
                and gen_summary.strip()
                and isinstance(gen_suggestion, str)
                and gen_suggestion.strip()
            ):
                summary, suggestion = gen_summary.strip(), gen_suggestion.strip()
                generator_used = True
        except GeneratorError:
            pass

    return Reminder(
        reminder_id=reminder_id,
        trigger=trigger,
        grounding=grounding,
        summary=summary,
        suggestion=suggestion,
        generator_used=generator_used,
    )
