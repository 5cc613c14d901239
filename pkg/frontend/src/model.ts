/** Pure view-model layer: report documents in, renderable grid state out.
 *
 * Colors and statuses are taken verbatim from the report; the UI never
 * re-derives them.
 */

import type { CellRecordDoc, ReportDoc, TraceDoc } from './types.js';

export interface CellView {
  address: string;
  kind: CellRecordDoc['kind'];
  color: CellRecordDoc['color'];
  status: CellRecordDoc['status'];
  reasons: string[];
  display: string;
  formula: string | null;
  value: number | null;
  expected: [number, number] | null;
  bounding: [number, number] | null;
  error: string | null;
}

export interface GridViewModel {
  rows: number;
  cols: number;
  cells: Map<string, CellView>;
  revision: number;
  graphError: string[] | null;
}

export interface TraceHighlight {
  query: string;
  terminal: string;
  path: string[];
  tieBroken: boolean;
}

const ADDRESS_RE = /^([A-Z]+)([0-9]+)$/;

export function parseAddress(address: string): { col: number; row: number } {
  const match = ADDRESS_RE.exec(address);
  if (!match) {
    throw new Error(`not a cell address: ${address}`);
  }
  let col = 0;
  for (const ch of match[1]!) {
    col = col * 26 + (ch.charCodeAt(0) - 64);
  }
  return { col, row: Number(match[2]) };
}

export function columnLetters(col: number): string {
  let out = '';
  while (col > 0) {
    const rem = (col - 1) % 26;
    out = String.fromCharCode(65 + rem) + out;
    col = Math.floor((col - 1) / 26);
  }
  return out;
}

export function formatAddress(col: number, row: number): string {
  return `${columnLetters(col)}${row}`;
}

const VALUE_FORMAT = new Intl.NumberFormat('en-US', {
  minimumFractionDigits: 2,
  maximumFractionDigits: 2,
});

export function formatValue(value: number): string {
  return VALUE_FORMAT.format(value);
}

export function formatInterval(interval: [number, number]): string {
  return `[${interval[0]}:${interval[1]}]`;
}

const REASON_LABELS: Record<string, string> = {
  value_outside_expected: 'value outside the expected interval',
  expectation_unreasonable: 'expected interval is irreconcilable with the bounding interval',
  input_outside_interval: 'input value outside its interval',
  bounding_error: 'bounding interval could not be computed',
};

export function reasonLabel(reason: string): string {
  return REASON_LABELS[reason] ?? reason;
}

function cellView(record: CellRecordDoc): CellView {
  let display = '';
  if (record.kind === 'text') {
    display = record.text ?? '';
  } else if (record.error) {
    display = '#ERROR';
  } else if (record.value !== undefined && record.kind !== 'empty') {
    display = formatValue(record.value);
  }
  return {
    address: record.address,
    kind: record.kind,
    color: record.color,
    status: record.status,
    reasons: record.reasons,
    display,
    formula: record.formula ?? null,
    value: record.value ?? null,
    expected: record.expected ?? null,
    bounding: record.bounding ?? null,
    error: record.error ? `${record.error.kind}: ${record.error.detail}` : null,
  };
}

export function buildGrid(report: ReportDoc): GridViewModel {
  const cells = new Map<string, CellView>();
  let rows = 0;
  let cols = 0;
  for (const record of report.cells) {
    const { col, row } = parseAddress(record.address);
    rows = Math.max(rows, row);
    cols = Math.max(cols, col);
    cells.set(record.address, cellView(record));
  }
  return {
    rows: Math.max(rows, 1),
    cols: Math.max(cols, 1),
    cells,
    revision: report.revision ?? 0,
    graphError: report.graph_error ? report.graph_error.cycle : null,
  };
}

export function traceHighlight(trace: TraceDoc): TraceHighlight {
  return {
    query: trace.query,
    terminal: trace.most_influential,
    path: trace.path,
    tieBroken: trace.tie_broken,
  };
}

/** Client-side pre-submit check; the server re-validates. */
export function intervalInputError(loText: string, hiText: string): string | null {
  const lo = Number(loText);
  const hi = Number(hiText);
  if (loText.trim() === '' || hiText.trim() === '' || !Number.isFinite(lo) || !Number.isFinite(hi)) {
    return 'both bounds must be finite numbers';
  }
  if (lo > hi) {
    return `invalid interval: lower bound ${lo} exceeds upper bound ${hi}`;
  }
  return null;
}

export function countByColor(vm: GridViewModel): Record<string, string[]> {
  const out: Record<string, string[]> = { red: [], yellow: [], neutral: [] };
  for (const cell of vm.cells.values()) {
    out[cell.color]!.push(cell.address);
  }
  for (const list of Object.values(out)) {
    list.sort();
  }
  return out;
}
