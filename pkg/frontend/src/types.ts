/** Wire types for the analysis service (see the backend's report.schema.json). */

export type CellKind = 'number' | 'text' | 'formula' | 'empty';
export type CellStatus = 'symptom' | 'no_symptom' | 'unchecked';
export type CellColor = 'red' | 'yellow' | 'neutral';

export interface CellRecordDoc {
  address: string;
  kind: CellKind;
  status: CellStatus;
  reasons: string[];
  color: CellColor;
  formula?: string;
  text?: string;
  value?: number;
  expected?: [number, number];
  bounding?: [number, number];
  error?: { kind: string; detail: string };
}

export interface ReportDoc {
  engine_version: string;
  digest: string;
  timestamp: string;
  revision?: number;
  graph_error: { error: string; cycle: string[] } | null;
  cells: CellRecordDoc[];
}

export interface TraceStepDoc {
  current: string;
  faulty_precedents: string[];
  faulty_precedents_of: Record<string, string[]>;
  precedent_winners: string[];
  faulty_dependents_of: Record<string, string[]>;
  dependent_winners: string[];
  resolved_step: number;
  next: string | null;
}

export interface TraceDoc {
  query: string;
  most_influential: string;
  path: string[];
  tie_broken: boolean;
  steps: TraceStepDoc[];
  revision?: number;
}

export interface WorkbookDoc {
  cells: Record<string, { text?: string; number?: number; formula?: string }>;
}

export interface ApiErrorDoc {
  error: string;
  detail: string;
  cell?: string;
}

export type CellEditBody =
  | { formula: string }
  | { number: number }
  | { text: string }
  | { clear: true };
