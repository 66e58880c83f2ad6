import type {
  AnalyticsDto,
  AssertionDto,
  AssessmentDto,
  CategoryMatch,
  DecisionResponseDto,
  ExportDocument,
  PeriodDto,
  ResultsPageDto,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "unknown";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = (await response.json()) as { error?: string; message?: string };
    if (body.error) code = body.error;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(response.status, code, message);
}

export interface CreateSessionRequest {
  motivation: string;
  period: PeriodDto;
  roots: string[];
  max_depth?: number;
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  searchCategories(q: string, k?: number): Promise<{ matches: CategoryMatch[] }> {
    const params = new URLSearchParams({ q });
    if (k !== undefined) params.set("k", String(k));
    return this.request(`/categories?${params}`);
  }

  createSession(body: CreateSessionRequest): Promise<AssessmentDto> {
    return this.post("/sessions", body);
  }

  assessment(sessionId: string): Promise<AssessmentDto> {
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/assessment`);
  }

  recordDecision(
    sessionId: string,
    action: "select" | "deselect",
    targetKind: "category" | "entity",
    target: string,
  ): Promise<DecisionResponseDto> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/decisions`, {
      action,
      target_kind: targetKind,
      target,
    });
  }

  results(sessionId: string, page: number, pageSize?: number): Promise<ResultsPageDto> {
    const params = new URLSearchParams({ page: String(page) });
    if (pageSize !== undefined) params.set("page_size", String(pageSize));
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/results?${params}`);
  }

  analytics(sessionId: string, groupBy: string): Promise<AnalyticsDto> {
    const params = new URLSearchParams({ group_by: groupBy });
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/analytics?${params}`);
  }

  assertRelevance(
    sessionId: string,
    docId: string,
    sentenceIndex: number,
  ): Promise<AssertionDto> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/assertions`, {
      doc_id: docId,
      sentence_index: sentenceIndex,
    });
  }

  async exportSession(sessionId: string): Promise<{ raw: string; doc: ExportDocument }> {
    const response = await fetch(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/export`,
    );
    if (!response.ok) throw await toApiError(response);
    const raw = await response.text();
    return { raw, doc: JSON.parse(raw) as ExportDocument };
  }
}
