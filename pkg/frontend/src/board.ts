// Synthesis board panel: three collapsible groups (instant thoughts,
// evidence snippets, saved reminders) plus thought entry and export.
// The export download passes the server's markdown through untouched.

import { SENTIMENT_COLORS, type Sentiment } from "./colors.js";
import type { BoardSnapshot } from "./types.js";

export interface BoardHandlers {
  onAddThought(text: string): void;
  onExport(): Promise<string>;
}

export function triggerDownload(content: string, filename: string): void {
  const blob = new Blob([content], { type: "text/markdown" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.dataset.role = "download";
  document.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}

function group(title: string, role: string, count: number): HTMLDetailsElement {
  const details = document.createElement("details");
  details.open = true;
  details.dataset.group = role;
  const summary = document.createElement("summary");
  summary.textContent = `${title} (${count})`;
  details.appendChild(summary);
  return details;
}

export function renderBoard(
  snapshot: BoardSnapshot,
  handlers: BoardHandlers,
  download: (content: string, filename: string) => void = triggerDownload,
): HTMLElement {
  const root = document.createElement("section");
  root.className = "board-panel";
  root.dataset.panel = "board";

  const thoughts = group("Instant Thoughts", "thoughts", snapshot.thoughts.length);
  for (const t of snapshot.thoughts) {
    const li = document.createElement("p");
    li.className = "board-thought";
    li.textContent = t.text;
    thoughts.appendChild(li);
  }
  root.appendChild(thoughts);

  const snippets = group("Evidence Snippets", "snippets", snapshot.snippets.length);
  for (const s of snapshot.snippets) {
    const li = document.createElement("p");
    li.className = "board-snippet";
    const quote = document.createElement("q");
    quote.textContent = s.text;
    li.appendChild(quote);
    const meta = document.createElement("span");
    meta.className = "snippet-meta";
    meta.dataset.commentId = s.comment_id;
    meta.textContent = ` — ${s.comment_id}${s.topic_id ? `, ${s.topic_id}` : ""}`;
    if (s.sentiment) {
      const tag = document.createElement("span");
      tag.className = "sentiment-tag";
      tag.textContent = s.sentiment;
      tag.style.color = SENTIMENT_COLORS[s.sentiment as Sentiment] ?? "inherit";
      meta.appendChild(tag);
    }
    li.appendChild(meta);
    snippets.appendChild(li);
  }
  root.appendChild(snippets);

  const reminders = group("Saved Reminders", "reminders", snapshot.reminders.length);
  for (const r of snapshot.reminders) {
    const li = document.createElement("div");
    li.className = "board-reminder";
    const head = document.createElement("strong");
    head.textContent = `${r.trigger.kind} on ${r.trigger.topic_id}`;
    li.appendChild(head);
    const body = document.createElement("p");
    body.textContent = r.summary;
    li.appendChild(body);
    if (r.user_mind) {
      const note = document.createElement("p");
      note.className = "reminder-note";
      note.textContent = r.user_mind;
      li.appendChild(note);
    }
    reminders.appendChild(li);
  }
  root.appendChild(reminders);

  const entry = document.createElement("div");
  entry.className = "thought-entry";
  const input = document.createElement("textarea");
  input.placeholder = "Instant thought...";
  input.dataset.role = "thought-input";
  const addBtn = document.createElement("button");
  addBtn.dataset.action = "add-thought";
  addBtn.textContent = "note it";
  addBtn.addEventListener("click", () => {
    if (input.value.trim()) {
      handlers.onAddThought(input.value.trim());
      input.value = "";
    }
  });
  entry.append(input, addBtn);
  root.appendChild(entry);

  const exportBtn = document.createElement("button");
  exportBtn.dataset.action = "export";
  exportBtn.className = "export-button";
  exportBtn.textContent = "export board";
  exportBtn.addEventListener("click", async () => {
    const markdown = await handlers.onExport();
    download(markdown, `synthesis-board-${snapshot.session_id}.md`);
  });
  root.appendChild(exportBtn);

  return root;
}
