/** History panel: one line per successful batch. */

import type { HistoryEntry } from "./types.js";

export interface HistoryLine {
  index: number;
  source: string;
  detail: string;
}

export function historyLines(entries: HistoryEntry[]): HistoryLine[] {
  return entries.map((entry, i) => ({
    index: i + 1,
    source: entry.source,
    detail: entry.messages.join("; "),
  }));
}

export function renderHistory(list: HTMLOListElement, entries: HistoryEntry[]): void {
  list.replaceChildren(
    ...historyLines(entries).map((line) => {
      const item = document.createElement("li");
      const source = document.createElement("code");
      source.textContent = line.source;
      const detail = document.createElement("span");
      detail.className = "history-detail";
      detail.textContent = line.detail;
      item.append(source, detail);
      return item;
    }),
  );
}
