/** Canned service documents mirroring the bundled demo sheet. */

import type { ReportDoc, TraceDoc, CellRecordDoc } from '../src/types.js';

function cell(partial: Partial<CellRecordDoc> & { address: string }): CellRecordDoc {
  return {
    kind: 'number',
    status: 'unchecked',
    reasons: [],
    color: 'neutral',
    ...partial,
  };
}

export function demoReport(): ReportDoc {
  return {
    engine_version: '0.1.0',
    digest: 'sha256:' + '0'.repeat(64),
    timestamp: '2026-01-01T00:00:00+00:00',
    revision: 0,
    graph_error: null,
    cells: [
      cell({ address: 'A1', kind: 'text', text: 'Cost share' }),
      cell({ address: 'B4', value: 48 }),
      cell({ address: 'D4', value: 24000 }),
      cell({ address: 'B5', value: 8.25 }),
      cell({
        address: 'C5',
        kind: 'formula',
        formula: '=B5/B$9',
        value: 0.171875,
        bounding: [0.171875, 0.171875],
      }),
      cell({
        address: 'D5',
        kind: 'formula',
        formula: '=D4*C5',
        value: 4125,
        expected: [4000, 4250],
        bounding: [4125, 4125],
        status: 'no_symptom',
        color: 'yellow',
      }),
      cell({
        address: 'D6',
        kind: 'formula',
        formula: '=D5*C6',
        value: 1482.421875,
        expected: [8500, 8780],
        bounding: [1437.5, 1527.34375],
        status: 'symptom',
        color: 'red',
        reasons: ['expectation_unreasonable', 'value_outside_expected'],
      }),
      cell({
        address: 'D7',
        kind: 'formula',
        formula: '=D6*C7',
        value: 694.88525390625,
        expected: [10000, 12000],
        bounding: [3984.375, 4115.625],
        status: 'symptom',
        color: 'red',
        reasons: ['expectation_unreasonable', 'value_outside_expected'],
      }),
      cell({ address: 'D8', kind: 'empty', value: 0 }),
      cell({
        address: 'D9',
        kind: 'formula',
        formula: '=SUM(D5:D7)',
        value: 6302.30712890625,
        expected: [24000, 24000],
        bounding: [22500, 25030],
        status: 'symptom',
        color: 'red',
        reasons: ['value_outside_expected'],
      }),
    ],
  };
}

export function demoTrace(): TraceDoc {
  return {
    query: 'D9',
    most_influential: 'D6',
    path: ['D9', 'D7', 'D6'],
    tie_broken: false,
    revision: 0,
    steps: [
      {
        current: 'D9',
        faulty_precedents: ['D6', 'D7'],
        faulty_precedents_of: { D6: [], D7: ['D6'] },
        precedent_winners: ['D7'],
        faulty_dependents_of: {},
        dependent_winners: [],
        resolved_step: 5,
        next: 'D7',
      },
      {
        current: 'D7',
        faulty_precedents: ['D6'],
        faulty_precedents_of: { D6: [] },
        precedent_winners: ['D6'],
        faulty_dependents_of: {},
        dependent_winners: [],
        resolved_step: 5,
        next: 'D6',
      },
      {
        current: 'D6',
        faulty_precedents: [],
        faulty_precedents_of: {},
        precedent_winners: [],
        faulty_dependents_of: {},
        dependent_winners: [],
        resolved_step: 2,
        next: null,
      },
    ],
  };
}
