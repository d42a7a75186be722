/** Wire types of the session service. Rationals travel as strings. */

export interface CriterionPayload {
  name: string;
  breakpoints: string[];
}

export interface GridPayload {
  criteria: CriterionPayload[];
}

export interface QueryPayload {
  i: number;
  j: number;
  criterion_i: string;
  criterion_j: string;
  q_i: string;
  q_j: string;
  p_i: string;
}

export interface PendingQuery {
  query: QueryPayload;
  phrasing: string;
  answers_received: number;
}

export interface CreatedSession {
  id: string;
  status: string;
}

export interface AnswerAck {
  status: string;
  answers_received: number;
}

export interface TableEntry {
  label: string;
  slopes: Record<string, string[]>;
}

export interface UnitTableEntry extends TableEntry {
  weights: Record<string, string>;
}

export interface CurveSeries {
  model: string;
  level: string;
  points: [string, string][];
}

export interface CurvePlane {
  plane: [number, number];
  axes: [string, string];
  curves: CurveSeries[];
}

export interface MarginalSeries {
  model: string;
  points: [string, string][];
}

export interface MarginalEntry {
  criterion: string;
  series: MarginalSeries[];
}

export interface ExploitedPayload {
  first_pair: [number, number] | null;
  new_info_rectangles: number[][];
  touched_rectangles: number[][];
  scanned_rectangles: number[][];
  reference_deviations: number;
  degenerate_retries: number;
}

export interface ResultPayload {
  outcome: "two-models" | "identical-models" | "degenerate" | string;
  grid: GridPayload;
  tables: TableEntry[];
  query_count: number;
  breakdown: Record<string, number>;
  exploited: ExploitedPayload | null;
  /* present only on failed sessions */
  error?: { message: string; context: unknown };
  /* present only on completed sessions */
  tables_unit?: UnitTableEntry[];
  curves?: CurvePlane[];
  marginals?: MarginalEntry[];
}
