// Comment navigation panel: the paged stream with keyword highlights,
// useful toggles, snippet saving from text selections, and reminder cards
// spliced in right where their trigger fired.

import { toByteOffsets } from "./api.js";
import { SENTIMENT_COLORS } from "./colors.js";
import { renderReminderCard, type ReminderHandlers } from "./reminders.js";
import type { CommentPayload, ReminderDoc, StreamPage } from "./types.js";

export interface StreamHandlers extends ReminderHandlers {
  onEnterViewport(commentId: string): void;
  onLeaveViewport(commentId: string): void;
  onMark(commentId: string, useful: boolean): void;
  onSnippet(commentId: string, byteStart: number, byteEnd: number): void;
  onLoadMore(cursor: number): void;
}

function byteLength(text: string): number {
  return new TextEncoder().encode(text).length;
}

function highlightedText(comment: CommentPayload): DocumentFragment {
  // highlights come as UTF-8 byte spans; map them back to char indices
  const frag = document.createDocumentFragment();
  const text = comment.text;
  const byteOf: number[] = [0];
  for (const ch of text) byteOf.push(byteOf[byteOf.length - 1] + byteLength(ch));
  const chars = Array.from(text);

  const spans = [...comment.highlights].sort((a, b) => a.start - b.start);
  let cursor = 0; // char index
  for (const span of spans) {
    const startChar = byteOf.findIndex((b) => b === span.start);
    const endChar = byteOf.findIndex((b) => b === span.end);
    if (startChar < cursor || startChar < 0 || endChar < 0) continue;
    frag.append(chars.slice(cursor, startChar).join(""));
    const mark = document.createElement("mark");
    mark.dataset.keyword = span.keyword;
    mark.textContent = chars.slice(startChar, endChar).join("");
    frag.append(mark);
    cursor = endChar;
  }
  frag.append(chars.slice(cursor).join(""));
  return frag;
}

export function renderComment(
  comment: CommentPayload,
  handlers: StreamHandlers,
  marked: boolean,
): HTMLElement {
  const item = document.createElement("article");
  item.className = "comment-item";
  item.dataset.commentId = comment.id;

  const badge = document.createElement("span");
  badge.className = "sentiment-badge";
  badge.textContent = comment.sentiment ?? "unlabeled";
  if (comment.sentiment) {
    badge.style.backgroundColor = SENTIMENT_COLORS[comment.sentiment];
  }
  item.appendChild(badge);

  const body = document.createElement("p");
  body.className = "comment-text";
  body.appendChild(highlightedText(comment));
  item.appendChild(body);

  const actions = document.createElement("div");
  actions.className = "comment-actions";

  const useful = document.createElement("button");
  useful.dataset.action = "useful";
  useful.className = marked ? "useful-toggle marked" : "useful-toggle";
  useful.textContent = marked ? "useful ✓" : "useful";
  useful.addEventListener("click", () => {
    const next = !useful.classList.contains("marked");
    useful.classList.toggle("marked", next);
    useful.textContent = next ? "useful ✓" : "useful";
    handlers.onMark(comment.id, next);
  });
  actions.appendChild(useful);

  const save = document.createElement("button");
  save.dataset.action = "save-snippet";
  save.textContent = "save as Evidence Snippet";
  save.addEventListener("click", () => {
    const selection = window.getSelection?.();
    if (!selection || selection.rangeCount === 0) return;
    const range = selection.getRangeAt(0);
    if (!body.contains(range.commonAncestorContainer)) return;
    const selected = selection.toString();
    if (!selected) return;
    const charStart = comment.text.indexOf(selected);
    if (charStart < 0) return;
    const { start, end } = toByteOffsets(comment.text, charStart, charStart + selected.length);
    handlers.onSnippet(comment.id, start, end);
  });
  actions.appendChild(save);

  item.appendChild(actions);
  return item;
}

export function renderStream(
  page: StreamPage,
  handlers: StreamHandlers,
  options: {
    markedIds?: Set<string>;
    inlineReminders?: Map<string, ReminderDoc[]>; // after-comment-id -> cards
    observe?: (item: HTMLElement) => void;
  } = {},
): HTMLElement {
  const root = document.createElement("section");
  root.className = "stream-panel";
  root.dataset.panel = "stream";
  root.dataset.topicId = page.topic_id;

  if (page.contrast_pair && page.cursor === 0) {
    const note = document.createElement("p");
    note.className = "contrast-note";
    note.textContent = "Opening with two similar comments that disagree:";
    root.appendChild(note);
  }

  const list = document.createElement("div");
  list.className = "comment-list";
  for (const comment of page.comments) {
    const item = renderComment(comment, handlers, options.markedIds?.has(comment.id) ?? false);
    options.observe?.(item);
    list.appendChild(item);
    for (const reminder of options.inlineReminders?.get(comment.id) ?? []) {
      list.appendChild(renderReminderCard(reminder, handlers));
    }
  }
  root.appendChild(list);

  if (page.recommended_opposite) {
    const rec = document.createElement("p");
    rec.className = "opposite-recommendation";
    rec.dataset.commentId = page.recommended_opposite;
    rec.textContent = "A similar comment sees it differently →";
    root.appendChild(rec);
  }

  if (page.next_cursor !== null) {
    const more = document.createElement("button");
    more.className = "load-more";
    more.textContent = "more comments";
    const next = page.next_cursor;
    more.addEventListener("click", () => handlers.onLoadMore(next));
    root.appendChild(more);
  }

  return root;
}
