import { describe, expect, it, vi } from "vitest";

import { renderReminderCard } from "../src/reminders.js";
import { reminderFixture } from "./fixtures.js";

describe("reminder cards", () => {
  it("renders exactly the three parts", () => {
    const card = renderReminderCard(reminderFixture(), { onResolve: () => {} });
    const parts = [...card.querySelectorAll<HTMLElement>("[data-part]")].map(
      (el) => el.dataset.part,
    );
    expect(parts).toEqual(["grounding", "summary", "user-mind"]);
  });

  it("grounding shows the verifiable counts from the payload", () => {
    const card = renderReminderCard(reminderFixture("balance"), { onResolve: () => {} });
    const grounding = card.querySelector('[data-part="grounding"]')!.textContent!;
    expect(grounding).toContain("3");
    expect(grounding).toContain("46% positive");
    expect(grounding).toContain("31% negative");
  });

  it("coverage grounding shows viewed/total", () => {
    const card = renderReminderCard(reminderFixture("coverage"), { onResolve: () => {} });
    const grounding = card.querySelector('[data-part="grounding"]')!.textContent!;
    expect(grounding).toContain("28 of 40");
    expect(grounding).toContain("70%");
  });

  it("summary part carries the generated text verbatim", () => {
    const doc = reminderFixture();
    const card = renderReminderCard(doc, { onResolve: () => {} });
    const summary = card.querySelector('[data-part="summary"]')!.textContent!;
    expect(summary).toContain(doc.summary);
    expect(summary).toContain(doc.suggestion);
  });

  it("Add resolves with the typed user mind", () => {
    const onResolve = vi.fn();
    const card = renderReminderCard(reminderFixture(), { onResolve });
    const mind = card.querySelector<HTMLTextAreaElement>('[data-part="user-mind"]')!;
    mind.value = "noise concerns persist";
    card.querySelector<HTMLButtonElement>('[data-action="add"]')!.click();
    expect(onResolve).toHaveBeenCalledWith("rem-9", "add", "noise concerns persist");
  });

  it("Dismiss collapses the card and resolves without note", () => {
    const onResolve = vi.fn();
    const card = renderReminderCard(reminderFixture(), { onResolve });
    card.querySelector<HTMLButtonElement>('[data-action="dismiss"]')!.click();
    expect(onResolve).toHaveBeenCalledWith("rem-9", "dismiss", null);
    expect(card.classList.contains("collapsed")).toBe(true);
  });
});
