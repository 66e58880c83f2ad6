import type { AssessmentDto } from "./types.js";

export type Phase = "query-spec" | "assessment" | "reading";

export interface ViewState {
  phase: Phase;
  sessionId: string | null;
  /** Cached tree + selection, refreshed from the service after every mutation. */
  assessment: AssessmentDto | null;
  page: number;
  assertionCount: number;
}

export function initialState(): ViewState {
  return {
    phase: "query-spec",
    sessionId: null,
    assessment: null,
    page: 1,
    assertionCount: 0,
  };
}

/** Legal moves form a line: query-spec <-> assessment <-> reading. */
const FORWARD: Record<Phase, Phase | null> = {
  "query-spec": "assessment",
  assessment: "reading",
  reading: null,
};

const BACKWARD: Record<Phase, Phase | null> = {
  "query-spec": null,
  assessment: "query-spec",
  reading: "assessment",
};

export function enterAssessment(state: ViewState, assessment: AssessmentDto): ViewState {
  if (FORWARD[state.phase] !== "assessment") {
    throw new Error(`cannot enter assessment from ${state.phase}`);
  }
  return {
    ...state,
    phase: "assessment",
    sessionId: assessment.session_id,
    assessment,
  };
}

export function enterReading(state: ViewState): ViewState {
  if (FORWARD[state.phase] !== "reading") {
    throw new Error(`cannot enter reading from ${state.phase}`);
  }
  if (state.sessionId === null) throw new Error("no session");
  return { ...state, phase: "reading", page: 1 };
}

export function goBack(state: ViewState): ViewState {
  const previous = BACKWARD[state.phase];
  if (previous === null) throw new Error(`cannot go back from ${state.phase}`);
  if (previous === "query-spec") {
    // leaving the session drops everything derived from it
    return initialState();
  }
  return { ...state, phase: previous };
}

export function withAssessment(state: ViewState, assessment: AssessmentDto): ViewState {
  return { ...state, assessment };
}

export function withPage(state: ViewState, page: number): ViewState {
  if (page < 1) throw new Error(`page must be >= 1, got ${page}`);
  return { ...state, page };
}

export function bumpAssertions(state: ViewState): ViewState {
  return { ...state, assertionCount: state.assertionCount + 1 };
}
