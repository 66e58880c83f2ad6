import type { AnalyticsDto, ResultsPageDto, SnippetDto } from "../types.js";
import { barChart } from "../charts.js";
import { button, el } from "../dom.js";
import { snippetMeta, snippetText } from "../snippet.js";

export interface ReadingHandlers {
  onPage(page: number): void;
  onSave(docId: string, sentenceIndex: number): void;
  onExport(): void;
  onBack(): void;
}

export interface ReadingData {
  periodLabel: string;
  results: ResultsPageDto;
  timeline: AnalyticsDto;
  facet: AnalyticsDto;
  assertionCount: number;
}

function fragmentCard(snippet: SnippetDto, handlers: ReadingHandlers): HTMLElement {
  const card = el("article", "fragment");
  card.dataset.docId = snippet.doc_id;
  card.dataset.sentenceIndex = String(snippet.sentence_index);
  card.appendChild(snippetMeta(snippet));
  card.appendChild(snippetText(snippet));
  card.appendChild(
    button("Save to corpus", "save-fragment", () =>
      handlers.onSave(snippet.doc_id, snippet.sentence_index),
    ),
  );
  return card;
}

export function readingScreen(data: ReadingData, handlers: ReadingHandlers): HTMLElement {
  const screen = el("section", "screen reading-screen");
  screen.appendChild(el("h2", "", `Read: ${data.periodLabel}`));

  const summary = el("p", "result-summary");
  const total = el("span", "total-count", String(data.results.total));
  summary.append(total, document.createTextNode(" matching fragments · "));
  const saved = el("span", "assertion-count", String(data.assertionCount));
  summary.append(saved, document.createTextNode(" saved to corpus"));
  screen.appendChild(summary);

  const list = el("div", "fragment-list");
  for (const snippet of data.results.fragments) {
    list.appendChild(fragmentCard(snippet, handlers));
  }
  screen.appendChild(list);

  // pager
  const pages = Math.max(1, Math.ceil(data.results.total / data.results.page_size));
  const pager = el("div", "pager");
  const prev = button("Previous", "page-prev", () => handlers.onPage(data.results.page - 1));
  prev.disabled = data.results.page <= 1;
  const next = button("Next", "page-next", () => handlers.onPage(data.results.page + 1));
  next.disabled = data.results.page >= pages;
  pager.append(
    prev,
    el("span", "page-indicator", `page ${data.results.page} of ${pages}`),
    next,
  );
  screen.appendChild(pager);

  // analytics straight from the two count maps
  const analytics = el("div", "analytics");
  analytics.appendChild(
    barChart(data.timeline.counts, { title: "mentions by year", order: "key" }),
  );
  analytics.appendChild(
    barChart(data.facet.counts, {
      title: `mentions by ${data.facet.group_by.replace(/^meta:/, "")}`,
      order: "count",
    }),
  );
  screen.appendChild(analytics);

  const nav = el("div", "nav-row");
  nav.append(
    button("Back", "back-button", () => handlers.onBack()),
    button("Export session", "export-button", () => handlers.onExport()),
  );
  screen.appendChild(nav);
  return screen;
}
