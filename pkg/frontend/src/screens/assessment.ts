import type { AssessmentDto, CategoryRowDto, EntityRowDto } from "../types.js";
import { button, el } from "../dom.js";
import { snippetMeta, snippetText } from "../snippet.js";

export interface AssessmentHandlers {
  onToggle(kind: "category" | "entity", iri: string, selected: boolean): void;
  onContinue(): void;
  onBack(): void;
}

function entityRow(entity: EntityRowDto, handlers: AssessmentHandlers): HTMLElement {
  const row = el("li", entity.count === 0 ? "entity-row zero-count" : "entity-row");
  row.dataset.iri = entity.iri;

  const toggle = document.createElement("input");
  toggle.type = "checkbox";
  toggle.className = "entity-toggle";
  toggle.checked = entity.selected;
  toggle.addEventListener("change", () => {
    handlers.onToggle("entity", entity.iri, toggle.checked);
  });

  const label = el("span", "entity-label", entity.label);
  const relevance = el("span", `relevance-badge relevance-${entity.relevance}`, entity.relevance);
  const count = el("span", "count-badge", String(entity.count));
  count.dataset.iri = entity.iri;

  row.append(toggle, label, relevance, count);
  if (!entity.effective && entity.selected) {
    // selected but hidden because every containing category is deselected
    row.classList.add("shadowed");
  }
  return row;
}

function categoryBlock(category: CategoryRowDto, handlers: AssessmentHandlers): HTMLElement {
  const block = el("section", "category-block");
  block.dataset.iri = category.iri;
  block.style.marginLeft = `${category.depth}rem`;

  const header = el("header", "category-header");
  const toggle = document.createElement("input");
  toggle.type = "checkbox";
  toggle.className = "category-toggle";
  toggle.checked = category.selected;
  toggle.addEventListener("change", () => {
    handlers.onToggle("category", category.iri, toggle.checked);
  });
  header.append(
    toggle,
    el("span", "category-label", category.label),
    el("span", `status-badge status-${category.status}`, category.status),
  );
  block.appendChild(header);

  const entityList = el("ul", "entity-list");
  for (const entity of category.entities) {
    entityList.appendChild(entityRow(entity, handlers));
  }
  block.appendChild(entityList);

  const previews = el("div", "previews");
  for (const snippet of category.previews ?? []) {
    const quote = el("blockquote", "snippet");
    quote.dataset.docId = snippet.doc_id;
    quote.dataset.sentenceIndex = String(snippet.sentence_index);
    quote.appendChild(snippetMeta(snippet));
    quote.appendChild(snippetText(snippet));
    previews.appendChild(quote);
  }
  block.appendChild(previews);
  return block;
}

export function assessmentScreen(
  dto: AssessmentDto,
  handlers: AssessmentHandlers,
): HTMLElement {
  const screen = el("section", "screen assessment-screen");
  screen.appendChild(el("h2", "", `Assess: ${dto.period.label}`));
  screen.appendChild(
    el(
      "p",
      "session-line",
      `${dto.period.start_year}–${dto.period.end_year} · session ${dto.session_id}`,
    ),
  );

  const ordered = [...dto.categories].sort(
    (a, b) => a.depth - b.depth || a.label.localeCompare(b.label),
  );
  for (const category of ordered) {
    screen.appendChild(categoryBlock(category, handlers));
  }

  const nav = el("div", "nav-row");
  nav.append(
    button("Back", "back-button", () => handlers.onBack()),
    button("Read results", "continue-button", () => handlers.onContinue()),
  );
  screen.appendChild(nav);
  return screen;
}
