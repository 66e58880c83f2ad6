import type { SnippetDto } from "./types.js";
import { el } from "./dom.js";

/**
 * Render snippet text with its entity spans wrapped in <mark> elements.
 * Highlight offsets are relative to the snippet text.
 */
export function snippetText(snippet: SnippetDto): HTMLElement {
  const container = el("p", "snippet-text");
  const ordered = [...snippet.highlights].sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const highlight of ordered) {
    if (highlight.start < cursor) continue; // overlapping span, keep the first
    if (highlight.start > cursor) {
      container.appendChild(
        document.createTextNode(snippet.text.slice(cursor, highlight.start)),
      );
    }
    const mark = document.createElement("mark");
    mark.dataset.iri = highlight.iri;
    mark.textContent = snippet.text.slice(highlight.start, highlight.end);
    container.appendChild(mark);
    cursor = highlight.end;
  }
  if (cursor < snippet.text.length) {
    container.appendChild(document.createTextNode(snippet.text.slice(cursor)));
  }
  return container;
}

export function snippetMeta(snippet: SnippetDto): HTMLElement {
  const row = el("div", "snippet-meta");
  row.appendChild(el("span", "meta-chip meta-chip--date", snippet.date));
  for (const key of Object.keys(snippet.meta).sort()) {
    row.appendChild(el("span", "meta-chip", `${key}: ${snippet.meta[key]}`));
  }
  return row;
}
