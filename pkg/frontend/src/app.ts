import { ApiError, Client } from "./api.js";
import { clear, el } from "./dom.js";
import { assessmentScreen } from "./screens/assessment.js";
import { queryScreen } from "./screens/query.js";
import { readingScreen } from "./screens/reading.js";
import {
  ViewState,
  bumpAssertions,
  enterAssessment,
  enterReading,
  goBack,
  initialState,
  withAssessment,
  withPage,
} from "./state.js";
import type { AssessmentDto, ExportDocument } from "./types.js";

export interface ExportReadyDetail {
  raw: string;
  doc: ExportDocument;
}

export class App {
  private state: ViewState = initialState();
  /** Serializes every mutation and reload; at most one request cycle in flight. */
  private queue: Promise<void> = Promise.resolve();
  private readonly errorBar: HTMLElement;
  private readonly screenHost: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
    private readonly facetKey = "party",
  ) {
    this.errorBar = el("div", "error-bar");
    this.errorBar.hidden = true;
    this.screenHost = el("main", "screen-host");
    root.append(this.errorBar, this.screenHost);
  }

  start(): void {
    this.renderQuerySpec();
  }

  /** Resolves once every queued mutation and re-render has settled. */
  whenIdle(): Promise<void> {
    return this.queue;
  }

  private enqueue(work: () => Promise<void>): void {
    this.queue = this.queue.then(work).catch((err: unknown) => {
      this.showError(err);
    });
  }

  private showError(err: unknown): void {
    this.errorBar.textContent =
      err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    this.errorBar.hidden = false;
  }

  private clearError(): void {
    this.errorBar.hidden = true;
    this.errorBar.textContent = "";
  }

  private mount(screen: HTMLElement): void {
    clear(this.screenHost);
    this.screenHost.appendChild(screen);
  }

  // --- phase renderers ---

  private renderQuerySpec(): void {
    this.mount(
      queryScreen(this.client, {
        onCreated: (created: AssessmentDto) => {
          this.enqueue(async () => {
            // re-fetch: the creation response has no previews
            const assessment = await this.client.assessment(created.session_id);
            this.state = enterAssessment(this.state, assessment);
            this.renderAssessment();
          });
        },
      }),
    );
  }

  private renderAssessment(): void {
    const assessment = this.state.assessment;
    if (assessment === null) throw new Error("assessment phase without data");
    this.mount(
      assessmentScreen(assessment, {
        onToggle: (kind, iri, selected) => this.toggle(kind, iri, selected),
        onContinue: () => {
          this.enqueue(async () => {
            this.state = enterReading(this.state);
            await this.renderReading();
          });
        },
        onBack: () => {
          this.state = goBack(this.state);
          this.renderQuerySpec();
        },
      }),
    );
  }

  private toggle(kind: "category" | "entity", iri: string, selected: boolean): void {
    const sessionId = this.state.sessionId;
    if (sessionId === null) return;
    this.enqueue(async () => {
      this.clearError();
      try {
        await this.client.recordDecision(
          sessionId,
          selected ? "select" : "deselect",
          kind,
          iri,
        );
      } catch (err) {
        // roll the optimistic checkbox back by re-rendering the cached tree
        this.renderAssessment();
        throw err;
      }
      const assessment = await this.client.assessment(sessionId);
      this.state = withAssessment(this.state, assessment);
      this.renderAssessment();
    });
  }

  private async renderReading(): Promise<void> {
    const sessionId = this.state.sessionId;
    const assessment = this.state.assessment;
    if (sessionId === null || assessment === null) throw new Error("no session");
    const [results, timeline, facet] = await Promise.all([
      this.client.results(sessionId, this.state.page),
      this.client.analytics(sessionId, "year"),
      this.client.analytics(sessionId, `meta:${this.facetKey}`),
    ]);
    this.mount(
      readingScreen(
        {
          periodLabel: assessment.period.label,
          results,
          timeline,
          facet,
          assertionCount: this.state.assertionCount,
        },
        {
          onPage: (page) => {
            this.enqueue(async () => {
              this.state = withPage(this.state, page);
              await this.renderReading();
            });
          },
          onSave: (docId, sentenceIndex) => {
            this.enqueue(async () => {
              this.clearError();
              await this.client.assertRelevance(sessionId, docId, sentenceIndex);
              this.state = bumpAssertions(this.state);
              await this.renderReading();
            });
          },
          onExport: () => {
            this.enqueue(async () => {
              this.clearError();
              const exported = await this.client.exportSession(sessionId);
              this.deliverExport(exported);
            });
          },
          onBack: () => {
            this.enqueue(async () => {
              this.state = goBack(this.state);
              this.renderAssessment();
            });
          },
        },
      ),
    );
  }

  private deliverExport(exported: ExportReadyDetail): void {
    document.dispatchEvent(
      new CustomEvent<ExportReadyDetail>("export-ready", { detail: exported }),
    );
    // trigger a browser download where the API exists (not in test DOMs)
    if (typeof URL.createObjectURL === "function") {
      const blob = new Blob([exported.raw], { type: "application/json" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = `${exported.doc.session_id}.json`;
      link.click();
      URL.revokeObjectURL(link.href);
    }
  }
}
