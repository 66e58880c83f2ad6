import type { Client } from "../api.js";
import type { AssessmentDto, CategoryMatch } from "../types.js";
import { ApiError } from "../api.js";
import { button, clear, el } from "../dom.js";

export interface QueryScreenHandlers {
  onCreated(assessment: AssessmentDto): void;
}

interface Draft {
  roots: Map<string, string>; // iri -> label
  periodLabel: string;
  startYear: string;
  endYear: string;
  motivation: string;
}

function periodValid(draft: Draft): boolean {
  const start = Number(draft.startYear);
  const end = Number(draft.endYear);
  return (
    draft.periodLabel.trim() !== "" &&
    Number.isInteger(start) &&
    Number.isInteger(end) &&
    draft.startYear.trim() !== "" &&
    draft.endYear.trim() !== "" &&
    start <= end
  );
}

export function queryScreen(client: Client, handlers: QueryScreenHandlers): HTMLElement {
  const screen = el("section", "screen query-screen");
  screen.appendChild(el("h2", "", "Specify your query"));

  const draft: Draft = {
    roots: new Map(),
    periodLabel: "",
    startYear: "",
    endYear: "",
    motivation: "",
  };

  const errorBox = el("div", "error-box");
  errorBox.hidden = true;

  function showError(message: string): void {
    errorBox.textContent = message;
    errorBox.hidden = false;
  }

  // --- root category typeahead ---

  const rootField = el("div", "field");
  rootField.appendChild(el("label", "", "Root categories"));
  const search = document.createElement("input");
  search.type = "text";
  search.className = "root-search";
  search.placeholder = "Start typing a category label";
  const matchList = el("ul", "typeahead-results");
  const chipRow = el("div", "root-chips");
  rootField.append(search, matchList, chipRow);

  function renderChips(): void {
    clear(chipRow);
    for (const [iri, label] of draft.roots) {
      const chip = el("span", "root-chip", label);
      chip.dataset.iri = iri;
      const remove = button("×", "chip-remove", () => {
        draft.roots.delete(iri);
        renderChips();
        refreshSubmit();
      });
      chip.appendChild(remove);
      chipRow.appendChild(chip);
    }
  }

  function renderMatches(matches: CategoryMatch[]): void {
    clear(matchList);
    for (const match of matches) {
      const item = el("li", "typeahead-item", match.label);
      item.dataset.iri = match.iri;
      item.addEventListener("click", () => {
        draft.roots.set(match.iri, match.label);
        search.value = "";
        clear(matchList);
        renderChips();
        refreshSubmit();
      });
      matchList.appendChild(item);
    }
  }

  let searchToken = 0;
  search.addEventListener("input", () => {
    const q = search.value;
    const token = ++searchToken;
    if (q === "") {
      clear(matchList);
      return;
    }
    client
      .searchCategories(q)
      .then((body) => {
        if (token === searchToken) renderMatches(body.matches);
      })
      .catch((err: unknown) => {
        if (err instanceof ApiError) showError(err.message);
      });
  });

  // --- period picker ---

  const periodField = el("div", "field period-field");
  periodField.appendChild(el("label", "", "Period"));
  const periodLabel = document.createElement("input");
  periodLabel.type = "text";
  periodLabel.className = "period-label";
  periodLabel.placeholder = "Label";
  const startYear = document.createElement("input");
  startYear.type = "number";
  startYear.className = "period-start";
  startYear.placeholder = "Start year";
  const endYear = document.createElement("input");
  endYear.type = "number";
  endYear.className = "period-end";
  endYear.placeholder = "End year";
  periodField.append(periodLabel, startYear, endYear);

  // --- motivation ---

  const motivationField = el("div", "field");
  motivationField.appendChild(el("label", "", "Motivation"));
  const motivation = document.createElement("textarea");
  motivation.className = "motivation";
  motivation.placeholder = "Why are you collecting this corpus?";
  motivationField.appendChild(motivation);

  // --- submit ---

  const submit = button("Create session", "submit-session", () => {
    errorBox.hidden = true;
    submit.disabled = true;
    client
      .createSession({
        motivation: draft.motivation,
        period: {
          label: draft.periodLabel.trim(),
          start_year: Number(draft.startYear),
          end_year: Number(draft.endYear),
        },
        roots: [...draft.roots.keys()],
      })
      .then((assessment) => handlers.onCreated(assessment))
      .catch((err: unknown) => {
        showError(err instanceof ApiError ? err.message : String(err));
        refreshSubmit();
      });
  });

  function refreshSubmit(): void {
    submit.disabled = draft.roots.size === 0 || !periodValid(draft);
  }
  refreshSubmit();

  for (const [input, key] of [
    [periodLabel, "periodLabel"],
    [startYear, "startYear"],
    [endYear, "endYear"],
  ] as Array<[HTMLInputElement, "periodLabel" | "startYear" | "endYear"]>) {
    input.addEventListener("input", () => {
      draft[key] = input.value;
      refreshSubmit();
    });
  }
  motivation.addEventListener("input", () => {
    draft.motivation = motivation.value;
  });

  screen.append(rootField, periodField, motivationField, submit, errorBox);
  return screen;
}
