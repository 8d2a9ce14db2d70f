// Wire types for the fairview HTTP API. The client never derives these
// numbers itself: every displayed value originates from one of these
// payloads.

export interface SentimentMix {
  n_total: number;
  n_pos: number;
  n_neu: number;
  n_neg: number;
  p_pos: number;
  p_neu: number;
  p_neg: number;
}

export interface BinView {
  bin_id: string;
  q: number;
  r: number;
  size: number;
  sentiment_mix: SentimentMix;
  mask_fraction: number;
}

export interface RingArcOuter {
  topic_id: string;
  label: string;
  weight: number;
}

export interface RingArcInner {
  keyword: string;
  topic_id: string;
  weight: number;
}

export interface OverviewSnapshot {
  seq?: number;
  bins: BinView[];
  rings: { outer: RingArcOuter[]; inner: RingArcInner[] };
  progress: { viewed: number; total: number };
  selection: string | null;
}

export interface CommentHighlight {
  keyword: string;
  start: number; // UTF-8 byte offsets
  end: number;
}

export interface CommentPayload {
  id: string;
  text: string;
  sentiment: "positive" | "neutral" | "negative" | null;
  highlights: CommentHighlight[];
}

export interface StreamPage {
  seq: number;
  topic_id: string;
  cursor: number;
  next_cursor: number | null;
  total: number;
  comment_ids: string[];
  comments: CommentPayload[];
  contrast_pair: [string, string] | null;
  recommended_opposite: string | null;
}

export interface ReminderDoc {
  reminder_id: string;
  trigger: {
    kind: "balance" | "coverage";
    topic_id: string;
    evidence: Record<string, number | string | boolean>;
    fired_at: number;
  };
  grounding: Record<string, number>;
  summary: string;
  suggestion: string;
  user_mind: string | null;
  status: "pending" | "added" | "dismissed";
}

export interface EventResult {
  seq: number;
  events: unknown[];
  reminders: ReminderDoc[];
}

export interface SnippetDoc {
  snippet_id: string;
  comment_id: string;
  start: number;
  end: number;
  text: string;
  topic_id: string | null;
  sentiment: string | null;
  created_at: number;
}

export interface ThoughtDoc {
  thought_id: string;
  text: string;
  created_at: number;
  revises: string | null;
}

export interface BoardSnapshot {
  session_id: string;
  thoughts: ThoughtDoc[];
  snippets: SnippetDoc[];
  reminders: ReminderDoc[];
}

export interface ReadyInfo {
  status: string;
  corpus_size: number;
  topics: string[];
}
