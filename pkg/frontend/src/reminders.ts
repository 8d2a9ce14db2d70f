// Inline reminder cards. Each card shows exactly three parts: the
// statistical grounding that triggered it, the generated summary +
// suggestion, and an editable field for the reader's own take, with
// Add / Dismiss to keep or drop it.

import type { ReminderDoc } from "./types.js";

export interface ReminderHandlers {
  onResolve(reminderId: string, action: "add" | "dismiss", userMind: string | null): void;
}

function groundingText(reminder: ReminderDoc): string {
  const g = reminder.grounding;
  if (reminder.trigger.kind === "coverage") {
    const pct = Math.round((g.fraction ?? 0) * 100);
    return `viewed ${g.viewed} of ${g.total} comments (${pct}%)`;
  }
  return (
    `useful marks: ${g.n_useful} (${g.n_useful_pos} positive, ${g.n_useful_neg} negative); ` +
    `topic overall: ${Math.round((g.global_pos ?? 0) * 100)}% positive, ` +
    `${Math.round((g.global_neg ?? 0) * 100)}% negative`
  );
}

export function renderReminderCard(
  reminder: ReminderDoc,
  handlers: ReminderHandlers,
): HTMLElement {
  const card = document.createElement("aside");
  card.className = `reminder-card reminder-${reminder.trigger.kind}`;
  card.dataset.reminderId = reminder.reminder_id;

  const heading = document.createElement("header");
  heading.textContent =
    reminder.trigger.kind === "balance" ? "Balance check" : "Coverage check";
  card.appendChild(heading);

  const grounding = document.createElement("p");
  grounding.dataset.part = "grounding";
  grounding.className = "reminder-grounding";
  grounding.textContent = groundingText(reminder);
  card.appendChild(grounding);

  const summary = document.createElement("div");
  summary.dataset.part = "summary";
  summary.className = "reminder-summary";
  const summaryText = document.createElement("p");
  summaryText.textContent = reminder.summary;
  const suggestionText = document.createElement("p");
  suggestionText.className = "reminder-suggestion";
  suggestionText.textContent = reminder.suggestion;
  summary.append(summaryText, suggestionText);
  card.appendChild(summary);

  const mind = document.createElement("textarea");
  mind.dataset.part = "user-mind";
  mind.className = "reminder-user-mind";
  mind.placeholder = "Your take, in your own words";
  mind.value = reminder.user_mind ?? "";
  card.appendChild(mind);

  const actions = document.createElement("div");
  actions.className = "reminder-actions";
  const add = document.createElement("button");
  add.dataset.action = "add";
  add.textContent = "Add";
  add.addEventListener("click", () => {
    handlers.onResolve(reminder.reminder_id, "add", mind.value || null);
    card.classList.add("resolved");
  });
  const dismiss = document.createElement("button");
  dismiss.dataset.action = "dismiss";
  dismiss.textContent = "Dismiss";
  dismiss.addEventListener("click", () => {
    handlers.onResolve(reminder.reminder_id, "dismiss", mind.value || null);
    card.classList.add("collapsed");
  });
  actions.append(add, dismiss);
  card.appendChild(actions);

  return card;
}
