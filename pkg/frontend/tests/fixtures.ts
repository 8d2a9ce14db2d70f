// Canned API payloads for the mocked-transport contract tests.

import type {
  BoardSnapshot,
  OverviewSnapshot,
  ReminderDoc,
  SentimentMix,
  StreamPage,
} from "../src/types.js";

export function mix(pos: number, neu: number, neg: number): SentimentMix {
  const n = pos + neu + neg;
  return {
    n_total: n,
    n_pos: pos,
    n_neu: neu,
    n_neg: neg,
    p_pos: n ? pos / n : 0,
    p_neu: n ? neu / n : 0,
    p_neg: n ? neg / n : 0,
  };
}

export function overviewFixture(): OverviewSnapshot {
  return {
    seq: 4,
    bins: [
      { bin_id: "b1", q: 0, r: 0, size: 10, sentiment_mix: mix(1, 1, 8), mask_fraction: 0.3 },
      { bin_id: "b2", q: 1, r: 0, size: 6, sentiment_mix: mix(5, 1, 0), mask_fraction: 0.0 },
      { bin_id: "b3", q: 0, r: 1, size: 4, sentiment_mix: mix(1, 2, 1), mask_fraction: 1.0 },
    ],
    rings: {
      outer: [
        { topic_id: "topic-1", label: "Rooms", weight: 12 },
        { topic_id: "topic-2", label: "Staff", weight: 8 },
        { topic_id: "topic-3", label: "Food", weight: 0 },
        { topic_id: "topic-4", label: "Location", weight: 5 },
        { topic_id: "topic-5", label: "Facilities", weight: 3 },
        { topic_id: "topic-6", label: "Value", weight: 2 },
      ],
      inner: [
        { keyword: "room", topic_id: "topic-1", weight: 9 },
        { keyword: "bed", topic_id: "topic-1", weight: 3 },
        { keyword: "staff", topic_id: "topic-2", weight: 8 },
        { keyword: "breakfast", topic_id: "topic-3", weight: 0 },
      ],
    },
    progress: { viewed: 28, total: 40 },
    selection: null,
  };
}

export function reminderFixture(kind: "balance" | "coverage" = "balance"): ReminderDoc {
  return {
    reminder_id: "rem-9",
    trigger: {
      kind,
      topic_id: "topic-1",
      evidence: {},
      fired_at: 12,
    },
    grounding:
      kind === "balance"
        ? { n_useful: 3, n_useful_pos: 0, n_useful_neg: 3, global_pos: 0.4617, global_neg: 0.3136 }
        : { viewed: 28, total: 40, fraction: 0.7 },
    summary: "Most of what you kept is negative.",
    suggestion: "You have mainly read negative opinions—consider checking the other side.",
    user_mind: null,
    status: "pending",
  };
}

export function streamFixture(): StreamPage {
  return {
    seq: 2,
    topic_id: "topic-1",
    cursor: 0,
    next_cursor: null,
    total: 2,
    comment_ids: ["c1", "c2"],
    comments: [
      {
        id: "c1",
        text: "The room was spotless.",
        sentiment: "positive",
        highlights: [{ keyword: "room", start: 4, end: 8 }],
      },
      {
        id: "c2",
        text: "The room was filthy.",
        sentiment: "negative",
        highlights: [{ keyword: "room", start: 4, end: 8 }],
      },
    ],
    contrast_pair: ["c1", "c2"],
    recommended_opposite: null,
  };
}

export function boardFixture(): BoardSnapshot {
  return {
    session_id: "s-test",
    thoughts: [{ thought_id: "th-1", text: "mixed bag", created_at: 5, revises: null }],
    snippets: [
      {
        snippet_id: "sn-2",
        comment_id: "c1",
        start: 4,
        end: 8,
        text: "room",
        topic_id: "topic-1",
        sentiment: "positive",
        created_at: 6,
      },
    ],
    reminders: [{ ...reminderFixture(), status: "added", user_mind: "keep watching" }],
  };
}

export const EXPORT_MARKDOWN = [
  "# Synthesis Board (s-test)",
  "",
  "## Instant Thoughts",
  "",
  "- [th-1] mixed bag",
  "",
  "## Evidence Snippets",
  "",
  '- [sn-2] from c1 (positive, topic-1): "room"',
  "",
  "## Saved Reminders",
  "",
  "- [rem-9] balance on topic-1",
  "  - your note: keep watching",
  "",
].join("\n");

type Handler = (init?: RequestInit) => unknown;

export function mockFetch(routes: Record<string, Handler>) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const path = url.split("?")[0];
    const handler = routes[path];
    if (!handler) return new Response("not found", { status: 404 });
    const body = handler(init);
    if (typeof body === "string") {
      return new Response(body, { status: 200, headers: { "content-type": "text/markdown" } });
    }
    return new Response(JSON.stringify(body), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}
