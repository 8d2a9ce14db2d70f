// Viewport dwell gating: a comment only counts as viewed after it has been
// continuously visible for the dwell threshold (default 500 ms). Scrolling
// past faster emits nothing.

export class DwellTracker {
  private timers = new Map<string, ReturnType<typeof setTimeout>>();
  private emitted = new Set<string>();

  constructor(
    private readonly onView: (commentId: string) => void,
    private readonly dwellMs: number = 500,
  ) {}

  enter(commentId: string): void {
    if (this.emitted.has(commentId) || this.timers.has(commentId)) return;
    this.timers.set(
      commentId,
      setTimeout(() => {
        this.timers.delete(commentId);
        this.emitted.add(commentId);
        this.onView(commentId);
      }, this.dwellMs),
    );
  }

  leave(commentId: string): void {
    const timer = this.timers.get(commentId);
    if (timer !== undefined) {
      clearTimeout(timer);
      this.timers.delete(commentId);
    }
  }

  reset(): void {
    for (const timer of this.timers.values()) clearTimeout(timer);
    this.timers.clear();
    this.emitted.clear();
  }
}
