// App shell: wires the three panels to the API, keeps the view model in
// sync, and splices reminder cards into the stream at their trigger
// position. All numbers shown anywhere come from API responses.

import { ApiClient } from "./api.js";
import { renderBoard } from "./board.js";
import { DwellTracker } from "./dwell.js";
import { renderOverview } from "./overview.js";
import { renderStream, type StreamHandlers } from "./stream.js";
import type { ReminderDoc, StreamPage } from "./types.js";

interface ViewModel {
  selection: string | null;
  topic: string | null;
  pages: StreamPage[];
  marked: Set<string>;
  inlineReminders: Map<string, ReminderDoc[]>; // after comment id
  lastEngaged: string | null;
}

export class App {
  private vm: ViewModel = {
    selection: null,
    topic: null,
    pages: [],
    marked: new Set(),
    inlineReminders: new Map(),
    lastEngaged: null,
  };
  private dwell: DwellTracker;
  private observer: IntersectionObserver | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly rootEl: HTMLElement,
    dwellMs = 500,
  ) {
    this.dwell = new DwellTracker((cid) => void this.sendView(cid), dwellMs);
  }

  async start(): Promise<void> {
    const ready = await this.api.ready();
    await this.api.createSession();
    this.vm.topic = ready.topics[0] ?? null;
    if (this.vm.topic) {
      this.vm.pages = [await this.api.stream(this.vm.topic)];
    }
    await this.refresh();
  }

  private handlers(): StreamHandlers {
    return {
      onEnterViewport: (cid) => this.dwell.enter(cid),
      onLeaveViewport: (cid) => this.dwell.leave(cid),
      onMark: (cid, useful) => void this.sendMark(cid, useful),
      onSnippet: (cid, start, end) => void this.api.snippet(cid, start, end).then(() => this.refreshBoard()),
      onLoadMore: (cursor) => void this.loadMore(cursor),
      onResolve: (rid, action, mind) =>
        void this.api.resolveReminder(rid, action, mind).then(() => this.refreshBoard()),
    };
  }

  private async sendView(commentId: string): Promise<void> {
    if (!this.vm.topic) return;
    const result = await this.api.view(commentId, this.vm.topic);
    this.takeReminders(commentId, result.reminders);
    await this.refreshOverview();
  }

  private async sendMark(commentId: string, useful: boolean): Promise<void> {
    if (useful) this.vm.marked.add(commentId);
    else this.vm.marked.delete(commentId);
    const result = await this.api.mark(commentId, useful);
    this.takeReminders(commentId, result.reminders);
  }

  private takeReminders(afterCommentId: string, reminders: ReminderDoc[]): void {
    if (!reminders.length) return;
    const existing = this.vm.inlineReminders.get(afterCommentId) ?? [];
    this.vm.inlineReminders.set(afterCommentId, existing.concat(reminders));
    void this.refreshStream();
  }

  private async loadMore(cursor: number): Promise<void> {
    if (!this.vm.topic) return;
    this.vm.pages.push(await this.api.stream(this.vm.topic, cursor));
    await this.refreshStream();
  }

  private async selectFromRing(selection: string | null): Promise<void> {
    this.vm.selection = selection;
    await this.api.setSelection(selection);
    if (selection?.startsWith("topic:")) {
      this.vm.topic = selection.slice("topic:".length);
      this.vm.pages = [await this.api.stream(this.vm.topic)];
    }
    await this.refresh();
  }

  private observeComments(): (el: HTMLElement) => void {
    this.observer?.disconnect();
    if (typeof IntersectionObserver === "undefined") return () => {};
    this.observer = new IntersectionObserver((entries) => {
      for (const entry of entries) {
        const cid = (entry.target as HTMLElement).dataset.commentId;
        if (!cid) continue;
        if (entry.isIntersecting) this.dwell.enter(cid);
        else this.dwell.leave(cid);
      }
    });
    return (el) => this.observer?.observe(el);
  }

  private panel(name: string): HTMLElement {
    let el = this.rootEl.querySelector<HTMLElement>(`[data-slot="${name}"]`);
    if (!el) {
      el = document.createElement("div");
      el.dataset.slot = name;
      this.rootEl.appendChild(el);
    }
    return el;
  }

  async refresh(): Promise<void> {
    await Promise.all([this.refreshOverview(), this.refreshStream(), this.refreshBoard()]);
  }

  private async refreshOverview(): Promise<void> {
    const snapshot = await this.api.overview(this.vm.selection);
    const panel = this.panel("overview");
    panel.replaceChildren(
      renderOverview(snapshot, { onSelect: (sel) => void this.selectFromRing(sel) }),
    );
  }

  private async refreshStream(): Promise<void> {
    const panel = this.panel("stream");
    const observe = this.observeComments();
    panel.replaceChildren();
    for (const page of this.vm.pages) {
      panel.appendChild(
        renderStream(page, this.handlers(), {
          markedIds: this.vm.marked,
          inlineReminders: this.vm.inlineReminders,
          observe,
        }),
      );
    }
  }

  private async refreshBoard(): Promise<void> {
    const { board } = await this.api.board();
    const panel = this.panel("board");
    panel.replaceChildren(
      renderBoard(board, {
        onAddThought: (text) => void this.api.addThought(text).then(() => this.refreshBoard()),
        onExport: () => this.api.exportBoard("markdown"),
      }),
    );
  }
}

declare global {
  interface Window {
    fairviewApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(new ApiClient(""), document.getElementById("app")!);
  window.fairviewApp = app;
  void app.start();
}
