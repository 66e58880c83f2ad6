// Wire types, mirroring the service's JSON bodies field for field.

export interface CategoryMatch {
  iri: string;
  label: string;
}

export interface PeriodDto {
  label: string;
  start_year: number;
  end_year: number;
}

export interface HighlightDto {
  start: number;
  end: number;
  iri: string;
}

export interface SnippetDto {
  doc_id: string;
  sentence_index: number;
  date: string;
  meta: Record<string, string>;
  text: string;
  snippet_start: number;
  sentence_start: number;
  sentence_end: number;
  context_before: number;
  context_after: number;
  highlights: HighlightDto[];
}

export interface EntityRowDto {
  iri: string;
  label: string;
  relevance: "in_period" | "out_of_period" | "borderline" | "undated";
  count: number;
  selected: boolean;
  effective: boolean;
}

export interface CategoryRowDto {
  iri: string;
  label: string;
  depth: number;
  status: "included" | "excluded";
  selected: boolean;
  entities: EntityRowDto[];
  previews?: SnippetDto[];
}

export interface EffectiveDto {
  categories: string[];
  entities: string[];
}

export interface AssessmentDto {
  session_id: string;
  created_at: string;
  motivation: string;
  period: PeriodDto;
  roots: string[];
  max_depth: number;
  categories: CategoryRowDto[];
  effective: EffectiveDto;
}

export interface DecisionDto {
  seq: number;
  timestamp: string;
  action: "select" | "deselect";
  target_kind: "category" | "entity";
  target: string;
  origin: "system_default" | "user";
}

export interface DecisionResponseDto {
  decision: DecisionDto;
  effective: EffectiveDto;
}

export interface ResultsPageDto {
  total: number;
  page: number;
  page_size: number;
  fragments: SnippetDto[];
}

export interface AnalyticsDto {
  group_by: string;
  counts: Record<string, number>;
}

export interface AssertionDto {
  seq: number;
  timestamp: string;
  doc_id: string;
  sentence_start: number;
  sentence_end: number;
  entities: string[];
  period_subjects: string[];
  supporting_decisions: number[];
}

export interface ExportDocument {
  session_id: string;
  created_at: string;
  motivation: string;
  period: PeriodDto;
  roots: string[];
  max_depth: number;
  decisions: DecisionDto[];
  assertions: AssertionDto[];
}
