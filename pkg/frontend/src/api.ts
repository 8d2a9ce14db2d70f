// Typed client for the fairview API. The fetch function is injectable so
// contract tests can run against a mocked transport.

import type {
  BoardSnapshot,
  EventResult,
  OverviewSnapshot,
  ReadyInfo,
  ReminderDoc,
  SnippetDoc,
  StreamPage,
  ThoughtDoc,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private sessionId: string | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  get session(): string {
    if (!this.sessionId) throw new Error("no session yet");
    return this.sessionId;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      const body = await resp.text();
      throw new ApiError(resp.status, `${resp.status} on ${path}: ${body}`);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  ready(): Promise<ReadyInfo> {
    return this.request("/api/ready");
  }

  async createSession(): Promise<string> {
    const body = await this.post<{ session_id: string }>("/api/sessions", {});
    this.sessionId = body.session_id;
    return body.session_id;
  }

  overview(selection: string | null): Promise<OverviewSnapshot> {
    const qs = selection ? `?selection=${encodeURIComponent(selection)}` : "";
    return this.request(`/api/sessions/${this.session}/overview${qs}`);
  }

  stream(topic: string, cursor = 0, pageSize = 10): Promise<StreamPage> {
    const qs = `?topic=${encodeURIComponent(topic)}&cursor=${cursor}&page_size=${pageSize}`;
    return this.request(`/api/sessions/${this.session}/stream${qs}`);
  }

  setSelection(selection: string | null): Promise<{ seq: number }> {
    return this.post(`/api/sessions/${this.session}/selection`, { selection });
  }

  view(commentId: string, topicId: string): Promise<EventResult> {
    return this.post(`/api/sessions/${this.session}/events/view`, {
      comment_id: commentId,
      topic_id: topicId,
    });
  }

  mark(commentId: string, useful: boolean): Promise<EventResult> {
    return this.post(`/api/sessions/${this.session}/events/mark`, {
      comment_id: commentId,
      useful,
    });
  }

  snippet(commentId: string, start: number, end: number): Promise<{ snippet: SnippetDoc }> {
    return this.post(`/api/sessions/${this.session}/events/snippet`, {
      comment_id: commentId,
      start,
      end,
    });
  }

  resolveReminder(
    reminderId: string,
    action: "add" | "dismiss",
    userMind: string | null,
  ): Promise<{ reminder: ReminderDoc }> {
    return this.post(`/api/sessions/${this.session}/reminders/${reminderId}/resolve`, {
      action,
      user_mind: userMind,
    });
  }

  board(): Promise<{ seq: number; board: BoardSnapshot }> {
    return this.request(`/api/sessions/${this.session}/board`);
  }

  addThought(text: string): Promise<{ thought: ThoughtDoc }> {
    return this.post(`/api/sessions/${this.session}/board/thoughts`, { text });
  }

  async exportBoard(format: "markdown" | "structured" = "markdown"): Promise<string> {
    const resp = await this.fetchFn(
      `${this.base}/api/sessions/${this.session}/board/export?format=${format}`,
    );
    if (!resp.ok) throw new ApiError(resp.status, `export failed (${resp.status})`);
    return resp.text();
  }
}

// The engine indexes spans in UTF-8 bytes; DOM selections come in UTF-16
// code units. Convert before sending snippet offsets.
export function toByteOffsets(
  text: string,
  charStart: number,
  charEnd: number,
): { start: number; end: number } {
  const enc = new TextEncoder();
  return {
    start: enc.encode(text.slice(0, charStart)).length,
    end: enc.encode(text.slice(0, charEnd)).length,
  };
}
